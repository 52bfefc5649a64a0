#include <doctest.h>

#include <sstream>
#include <string>
#include <vector>

#include "dsgc/config.hpp"
#include "dsgc/csv.hpp"

using namespace dsgc;

namespace {

const char* kValidConfig = R"(
# OU benchmark
model = ou
T = 1.0
delta_t = 0.1
delta_tau = 0.001
forcing_modes = 4
forcing_level = 3
constraint_degree = 4
basis = hermite
stepper = rk2
b_u = 2.0
mu_u = 0.5
sigma_u = 1.0
init_1 = point:1.0
)";

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.push_back("");
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_CASE("parse_config: full round of keys") {
  RunConfig cfg = parse_config(kValidConfig);
  CHECK(cfg.model_name == "ou");
  CHECK(cfg.T == doctest::Approx(1.0));
  CHECK(cfg.delta_t == doctest::Approx(0.1));
  CHECK(cfg.forcing_modes == 4);
  CHECK(cfg.forcing_level == 3);
  CHECK(cfg.constraint_degree == 4);
  CHECK(cfg.basis_mode == BasisMode::Hermite);
  CHECK(cfg.stepper == Stepper::WeakRk2);
  CHECK(cfg.params.at("b_u") == doctest::Approx(2.0));
  REQUIRE(cfg.initial.size() == 1);
  CHECK(cfg.initial[0].kind == CoordInitial::Kind::Point);
  CHECK(cfg.initial[0].p1 == doctest::Approx(1.0));
  CHECK(cfg.initial[0].level == 3);  // default
}

TEST_CASE("parse_config: defaults for optional keys") {
  RunConfig cfg = parse_config(
      "model = cubic\nT = 1\ndelta_t = 0.5\ndelta_tau = 0.001\nsigma_u = 2\n"
      "init_1 = normal:0:1\n");
  CHECK(cfg.forcing_modes == 2);
  CHECK(cfg.forcing_level == 2);
  CHECK(cfg.constraint_degree == 4);
  CHECK(cfg.output_cadence == 10);
  CHECK(cfg.basis_mode == BasisMode::Hermite);
  CHECK(cfg.stepper == Stepper::WeakRk2);
  CHECK(cfg.initial[0].kind == CoordInitial::Kind::Normal);
  CHECK(cfg.initial[0].p2 == doctest::Approx(1.0));
}

TEST_CASE("parse_config: error diagnostics carry line numbers and key names") {
  auto expect_error = [](const std::string& text, const std::string& fragment) {
    try {
      parse_config(text);
      FAIL("expected invalid_argument for: " << fragment);
    } catch (const std::invalid_argument& e) {
      CHECK(std::string(e.what()).find(fragment) != std::string::npos);
    }
  };
  expect_error("model = ou\nbogus_key = 1\n", "line 2");
  expect_error("model = ou\nbogus_key = 1\n", "bogus_key");
  expect_error("model = ou\nT = 1\nT = 2\n", "duplicate");
  expect_error("model = ou\nthis line has no equals\n", "line 2");
  expect_error("model = ou\n", "missing required");
  expect_error(
      "model = ou\nT = abc\ndelta_t = 0.1\ndelta_tau = 0.001\ninit_1 = point:0\n",
      "not a number");
  expect_error(
      "model = ou\nT = 1\ndelta_t = 0.1\ndelta_tau = 0.001\ninit_1 = cauchy:0\n",
      "init_1");
  // two-coordinate model requires init_2
  expect_error(
      "model = ou_random_damping\nT = 1\ndelta_t = 0.1\ndelta_tau = 0.001\n"
      "mu_u = 0\nsigma_u = 1\ninit_1 = point:1\n",
      "init_2");
}

TEST_CASE("presets: all five validate and carry their models") {
  for (const char* name : {"fig1_ou_naive", "ex1_ou_random_damping", "ex2_cubic",
                           "ex3_cir", "ex4_intermittent"}) {
    ExperimentPreset p = preset(name);
    CHECK(p.name == name);
    CHECK_NOTHROW(p.config.validate());
    CHECK_NOTHROW(make_model(p.config.model_name, p.config.params));
    CHECK_NOTHROW(initial_rule(p.config));
  }
  CHECK(preset("fig1_ou_naive").config.restart_count() == 1);
  CHECK(preset("ex1_ou_random_damping").config.model_name == "ou_random_damping");
  CHECK(preset("ex3_cir").config.stepper == Stepper::MilsteinCir);
  CHECK(preset("ex4_intermittent").config.model_name == "intermittent2d");
  CHECK_THROWS_AS(preset("ex9"), std::invalid_argument);
}

TEST_CASE("ou_random_damping_stats: degenerate interval matches plain OU") {
  MeanVar mixed = ou_random_damping_stats(0.2, 4.0, 1.0, 0.04, 2.0, 2.0 + 1e-9, 1.5);
  MeanVar plain = ou_stats(2.0, 0.2, 4.0, 1.0, 0.04, 1.5);
  CHECK(mixed.mean == doctest::Approx(plain.mean).epsilon(1e-6));
  CHECK(mixed.variance == doctest::Approx(plain.variance).epsilon(1e-6));
}

TEST_CASE("stats csv: layout and 17-digit round trip") {
  StatSeries s;
  s.times = {0.05, 0.1};
  s.mean = {Eigen::VectorXd::Constant(1, 1.0 / 3.0), Eigen::VectorXd::Constant(1, 0.2)};
  s.variance = {Eigen::VectorXd::Constant(1, 0.123456789012345678),
                Eigen::VectorXd::Constant(1, 0.5)};
  s.cumulant_times = {0.1};
  s.cumulants = {{0.2, 0.5, 0.0, -0.1, 0.0, 0.3}};

  std::stringstream out;
  write_stats_csv(out, s, 1);
  auto rows = parse_csv(out.str());
  REQUIRE(rows.size() == 3);
  REQUIRE(rows[0].size() == 9);
  CHECK(rows[0][0] == "t");
  CHECK(rows[0][1] == "mean_1");
  CHECK(rows[0][2] == "var_1");
  CHECK(rows[0][3] == "k1");
  CHECK(rows[0][8] == "k6");

  // non-restart row: cumulant cells are empty
  CHECK(rows[1][3].empty());
  CHECK(rows[1][8].empty());
  // restart row: cumulants present
  CHECK(!rows[2][3].empty());
  CHECK(std::stod(rows[2][6]) == doctest::Approx(-0.1));

  // 17 significant digits reproduce the doubles exactly
  CHECK(std::stod(rows[1][1]) == 1.0 / 3.0);
  CHECK(std::stod(rows[1][2]) == 0.123456789012345678);
}

TEST_CASE("diagnostics csv layout") {
  StatSeries s;
  RestartRecord rec;
  rec.t = 0.1;
  rec.rule.condition_number = 12.5;
  rec.rule.l1_objective = 1.25;
  rec.rule.residual = 1e-12;
  rec.rule.node_count = 5;
  rec.rule.lp_iterations = 17;
  rec.rule.fallbacks = {"basis"};
  rec.clamp_events = 3;
  s.diagnostics = {rec};

  std::stringstream out;
  write_diagnostics_csv(out, s);
  auto rows = parse_csv(out.str());
  REQUIRE(rows.size() == 2);
  CHECK(rows[0][0] == "t_j");
  CHECK(rows[0][7] == "clamps");
  CHECK(std::stod(rows[1][1]) == doctest::Approx(12.5));
  CHECK(rows[1][4] == "5");
  CHECK(rows[1][6] == "1");
  CHECK(rows[1][7] == "3");
}
