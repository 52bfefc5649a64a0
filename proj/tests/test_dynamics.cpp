#include <doctest.h>

#include <cmath>

#include "dsgc/forcing.hpp"
#include "dsgc/models.hpp"
#include "dsgc/propagate.hpp"

using namespace dsgc;

namespace {

QuadratureRule point_rule(double value) {
  QuadratureRule r;
  r.nodes = Eigen::MatrixXd::Constant(1, 1, value);
  r.weights = Eigen::VectorXd::Ones(1);
  return r;
}

Eigen::VectorXd vec1(double v) { return Eigen::VectorXd::Constant(1, v); }

}  // namespace

TEST_CASE("make_model: parameter validation") {
  CHECK_THROWS_AS(make_model("heat", {}), std::invalid_argument);
  CHECK_THROWS_AS(make_model("ou", {{"b_u", 1.0}}), std::invalid_argument);
  // Feller condition: 2 b mu >= sigma^2
  CHECK_THROWS_AS(make_model("cir", {{"b_u", 1.0}, {"mu_u", 0.1}, {"sigma_u", 1.0}}),
                  std::invalid_argument);
  SdeModel ok = make_model("cir", {{"b_u", 2.0}, {"mu_u", 0.6}, {"sigma_u", 0.5}});
  CHECK(ok.state_dim == 1);

  SdeModel im = make_model("intermittent2d", {{"a_u", 1.0},
                                              {"b_u", 1.2},
                                              {"b_v", 0.5},
                                              {"sigma_u", 0.5},
                                              {"sigma_v", 0.5}});
  CHECK(im.state_dim == 2);
  CHECK(im.n_drivers == 2);
  Eigen::VectorXd x(2);
  x << 2.0, 3.0;
  CHECK(im.drift(x)[0] == doctest::Approx(-(1.2 + 3.0) * 2.0));
  CHECK(im.drift(x)[1] == doctest::Approx(-1.5));
}

TEST_CASE("steppers: hand-evaluated single steps") {
  SdeModel ou = make_model("ou", {{"b_u", 2.0}, {"mu_u", 0.5}, {"sigma_u", 1.0}});

  // Euler: 1 + 2*(0.5-1)*0.01 + 0.02 = 1.01
  CHECK(step_euler(ou, vec1(1.0), vec1(0.02), 0.01)[0] == doctest::Approx(1.01));

  // Heun: predictor 1.01, drift mean (-1 + -1.02)/2, so 1 - 0.0101 + 0.02
  CHECK(step_weak_rk2(ou, vec1(1.0), vec1(0.02), 0.01)[0] == doctest::Approx(1.0099));

  // Milstein for CIR(b=2, mu=0.6, sigma=0.5) at u=0.5, dtau=0.01, dW=0.03:
  // 0.5 + 2*(0.6-0.5-0.03125)*0.01 + 0.5*sqrt(0.5)*0.03 + 0.0625*0.0009
  SdeModel cir = make_model("cir", {{"b_u", 2.0}, {"mu_u", 0.6}, {"sigma_u", 0.5}});
  CHECK(step_milstein_cir(cir, vec1(0.5), vec1(0.03), 0.01)[0] ==
        doctest::Approx(0.5120378517177982).epsilon(1e-13));

  CHECK_THROWS_AS(step_milstein_cir(ou, vec1(0.5), vec1(0.0), 0.01), std::invalid_argument);
}

TEST_CASE("Milstein clamp keeps the state positive and counts events") {
  SdeModel cir = make_model("cir", {{"b_u", 2.0}, {"mu_u", 0.1}, {"sigma_u", 0.5}});
  long clamps = 0;
  // 1 + 2*(0.1-1-0.03125)*0.5 - 0.5*0.2 + 0.0625*0.04 < 0
  double next = step_milstein_cir(cir, vec1(1.0), vec1(-0.2), 0.5, &clamps)[0];
  CHECK(next == 1e-12);
  CHECK(clamps == 1);
  step_milstein_cir(cir, vec1(0.5), vec1(0.0), 0.01, &clamps);
  CHECK(clamps == 1);  // benign step does not count
}

TEST_CASE("stepper orders on a deterministic flow") {
  SdeModel cubic = make_model("cubic", {{"sigma_u", 0.0}});
  auto integrate_to = [&](double dtau, bool rk2) {
    Eigen::VectorXd u = vec1(1.0);
    int n = static_cast<int>(std::lround(1.0 / dtau));
    for (int i = 0; i < n; ++i)
      u = rk2 ? step_weak_rk2(cubic, u, vec1(0.0), dtau)
              : step_euler(cubic, u, vec1(0.0), dtau);
    return u[0];
  };
  // reference by a very fine RK2 run
  double exact = integrate_to(1e-5, true);

  double e1 = std::abs(integrate_to(0.01, false) - exact);
  double e2 = std::abs(integrate_to(0.005, false) - exact);
  CHECK(e1 / e2 == doctest::Approx(2.0).epsilon(0.15));  // first order

  double h1 = std::abs(integrate_to(0.01, true) - exact);
  double h2 = std::abs(integrate_to(0.005, true) - exact);
  CHECK(h1 / h2 == doctest::Approx(4.0).epsilon(0.15));  // second order
  CHECK(h1 < e1);
}

TEST_CASE("propagate_interval: zero noise reduces to the ODE flow") {
  SdeModel ou = make_model("ou", {{"b_u", 1.0}, {"mu_u", 0.0}, {"sigma_u", 0.0}});
  QuadratureRule xi = forcing_rule(4, 1, false);  // single origin node
  IncrementTable table = increment_table(SpectralBasis(0.0, 0.1, 4), 100);

  PropagationResult res =
      propagate_interval(ou, point_rule(1.0), xi, table, Stepper::WeakRk2);
  CHECK(res.cloud.size() == 1);
  CHECK(res.cloud.mean()[0] == doctest::Approx(std::exp(-0.1)).epsilon(1e-6));
  CHECK(res.cloud.variance()[0] == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
}

TEST_CASE("propagate_interval: OU interval statistics") {
  SdeModel ou = make_model("ou", {{"b_u", 1.0}, {"mu_u", 0.0}, {"sigma_u", 1.0}});
  const int K = 6;
  QuadratureRule xi = forcing_rule(K, 3, false);
  IncrementTable table = increment_table(SpectralBasis(0.0, 0.5, K), 500);

  PropagationResult res =
      propagate_interval(ou, point_rule(1.0), xi, table, Stepper::WeakRk2);
  CHECK(res.cloud.size() == xi.size());
  CHECK(res.cloud.weights.sum() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(res.cloud.mean()[0] == doctest::Approx(std::exp(-0.5)).epsilon(1e-5));
  double exact_var = 0.5 * (1.0 - std::exp(-1.0));
  CHECK(res.cloud.variance()[0] == doctest::Approx(exact_var).epsilon(0.02));
}

TEST_CASE("propagate_interval: drivers act on their own coordinates") {
  // With a_u = 0 the two coordinates are independent OU processes.
  SdeModel im = make_model("intermittent2d", {{"a_u", 0.0},
                                              {"b_u", 1.2},
                                              {"b_v", 0.5},
                                              {"sigma_u", 0.4},
                                              {"sigma_v", 0.6}});
  const int K = 3;
  QuadratureRule xi = forcing_rule(2 * K, 2, false);
  IncrementTable table = increment_table(SpectralBasis(0.0, 0.2, K), 200);

  QuadratureRule u0;
  u0.nodes = Eigen::MatrixXd::Zero(1, 2);
  u0.nodes(0, 0) = 1.0;
  u0.nodes(0, 1) = 0.5;
  u0.weights = Eigen::VectorXd::Ones(1);

  PropagationResult res = propagate_interval(im, u0, xi, table, Stepper::WeakRk2);
  Eigen::VectorXd mean = res.cloud.mean(), var = res.cloud.variance();
  const double t = 0.2;
  CHECK(mean[0] == doctest::Approx(std::exp(-1.2 * t)).epsilon(1e-5));
  CHECK(mean[1] == doctest::Approx(0.5 * std::exp(-0.5 * t)).epsilon(1e-5));
  CHECK(var[0] ==
        doctest::Approx(0.16 / 2.4 * (1.0 - std::exp(-2.4 * t))).epsilon(0.05));
  CHECK(var[1] ==
        doctest::Approx(0.36 / 1.0 * (1.0 - std::exp(-1.0 * t))).epsilon(0.05));

  CHECK_THROWS_AS(
      propagate_interval(im, u0, forcing_rule(K, 2, false), table, Stepper::WeakRk2),
      std::invalid_argument);
}

TEST_CASE("propagate_interval: bitwise deterministic") {
  SdeModel ou = make_model("ou", {{"b_u", 2.0}, {"mu_u", 0.3}, {"sigma_u", 1.5}});
  QuadratureRule xi = forcing_rule(4, 2, false);
  IncrementTable table = increment_table(SpectralBasis(0.0, 0.1, 4), 50);
  QuadratureRule u0 = point_rule(0.7);

  ParticleCloud a = propagate_interval(ou, u0, xi, table, Stepper::WeakRk2).cloud;
  ParticleCloud b = propagate_interval(ou, u0, xi, table, Stepper::WeakRk2).cloud;
  CHECK((a.states - b.states).cwiseAbs().maxCoeff() == 0.0);
  CHECK((a.weights - b.weights).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("propagate_interval: observer cadence and final call") {
  SdeModel ou = make_model("ou", {{"b_u", 1.0}, {"mu_u", 0.0}, {"sigma_u", 1.0}});
  QuadratureRule xi = forcing_rule(2, 2, false);
  IncrementTable table = increment_table(SpectralBasis(0.3, 0.4, 2), 25);

  std::vector<double> seen;
  propagate_interval(
      ou, point_rule(1.0), xi, table, Stepper::Euler,
      [&](double t, const Eigen::MatrixXd&, const Eigen::VectorXd&) { seen.push_back(t); },
      10);
  REQUIRE(seen.size() == 3);  // steps 10, 20 and the final step 25
  CHECK(seen[0] == doctest::Approx(0.3 + 10 * 0.004));
  CHECK(seen[2] == doctest::Approx(0.4));
}
