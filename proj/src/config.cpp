#include "dsgc/config.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace dsgc {

namespace {

const std::set<std::string> kKnownKeys = {
    "model",        "T",          "delta_t",     "delta_tau",     "forcing_modes",
    "forcing_level", "forcing_product", "constraint_degree", "basis", "stepper",
    "output_cadence", "seed",
    "a_u", "b_u", "b_v", "mu_u", "sigma_u", "sigma_v",
    "init_1", "init_2", "init_level_1", "init_level_2"};

const std::set<std::string> kParamKeys = {"a_u", "b_u", "b_v", "mu_u", "sigma_u", "sigma_v"};

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& value) {
  try {
    size_t pos;
    double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("");
    return v;
  } catch (...) {
    throw std::invalid_argument("config: key '" + key + "': not a number: '" + value + "'");
  }
}

CoordInitial parse_initial(const std::string& key, const std::string& value) {
  // point:v | normal:mean:var | uniform:a:b
  std::vector<std::string> parts;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(trim(item));

  CoordInitial init;
  if (parts.empty()) throw std::invalid_argument("config: key '" + key + "': empty initial spec");
  if (parts[0] == "point" && parts.size() == 2) {
    init.kind = CoordInitial::Kind::Point;
    init.p1 = to_double(key, parts[1]);
  } else if (parts[0] == "normal" && parts.size() == 3) {
    init.kind = CoordInitial::Kind::Normal;
    init.p1 = to_double(key, parts[1]);
    init.p2 = to_double(key, parts[2]);
  } else if (parts[0] == "uniform" && parts.size() == 3) {
    init.kind = CoordInitial::Kind::Uniform;
    init.p1 = to_double(key, parts[1]);
    init.p2 = to_double(key, parts[2]);
  } else {
    throw std::invalid_argument("config: key '" + key + "': bad initial spec '" + value + "'");
  }
  return init;
}

int model_dimension(const std::string& name) {
  if (name == "ou_random_damping" || name == "intermittent2d") return 2;
  return 1;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                  ": expected 'key = value'");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (!kKnownKeys.count(key))
      throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                  ": unknown key '" + key + "'");
    if (kv.count(key))
      throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                  ": duplicate key '" + key + "'");
    kv[key] = value;
  }

  std::vector<std::string> missing;
  for (const std::string& req : {"model", "T", "delta_t", "delta_tau", "init_1"})
    if (!kv.count(req)) missing.push_back(req);
  if (!missing.empty()) {
    std::string msg = "config: missing required keys:";
    for (const auto& m : missing) msg += " " + m;
    throw std::invalid_argument(msg);
  }

  RunConfig cfg;
  cfg.model_name = kv.at("model");
  cfg.T = to_double("T", kv.at("T"));
  cfg.delta_t = to_double("delta_t", kv.at("delta_t"));
  cfg.delta_tau = to_double("delta_tau", kv.at("delta_tau"));

  auto get_int = [&](const std::string& key, int fallback) {
    if (!kv.count(key)) return fallback;
    return static_cast<int>(std::lround(to_double(key, kv.at(key))));
  };
  cfg.forcing_modes = get_int("forcing_modes", 2);
  cfg.forcing_level = get_int("forcing_level", 2);
  cfg.constraint_degree = get_int("constraint_degree", 4);
  cfg.output_cadence = get_int("output_cadence", 10);
  cfg.seed = static_cast<std::uint64_t>(get_int("seed", 0));

  if (kv.count("forcing_product")) {
    const std::string& v = kv.at("forcing_product");
    if (v == "true")
      cfg.forcing_product = true;
    else if (v == "false")
      cfg.forcing_product = false;
    else
      throw std::invalid_argument("config: key 'forcing_product': expected true/false");
  }

  if (kv.count("basis")) {
    const std::string& v = kv.at("basis");
    if (v == "monomial")
      cfg.basis_mode = BasisMode::Monomial;
    else if (v == "hermite")
      cfg.basis_mode = BasisMode::Hermite;
    else if (v == "data_orthonormal")
      cfg.basis_mode = BasisMode::DataOrthonormal;
    else
      throw std::invalid_argument("config: key 'basis': unknown value '" + v + "'");
  }
  if (kv.count("stepper")) {
    const std::string& v = kv.at("stepper");
    if (v == "euler")
      cfg.stepper = Stepper::Euler;
    else if (v == "rk2")
      cfg.stepper = Stepper::WeakRk2;
    else if (v == "milstein")
      cfg.stepper = Stepper::MilsteinCir;
    else
      throw std::invalid_argument("config: key 'stepper': unknown value '" + v + "'");
  }

  for (const auto& key : kParamKeys)
    if (kv.count(key)) cfg.params[key] = to_double(key, kv.at(key));

  const int d = model_dimension(cfg.model_name);
  for (int i = 1; i <= d; ++i) {
    const std::string key = "init_" + std::to_string(i);
    if (!kv.count(key))
      throw std::invalid_argument("config: missing required key '" + key + "' for model '" +
                                  cfg.model_name + "'");
    CoordInitial init = parse_initial(key, kv.at(key));
    init.level = get_int("init_level_" + std::to_string(i), 3);
    cfg.initial.push_back(init);
  }

  cfg.validate();
  return cfg;
}

MeanVar ou_random_damping_stats(double mu, double sigma, double u0_mean, double u0_var,
                                double lo, double hi, double t) {
  auto cond_mean = [&](double b) { return ou_stats(b, mu, sigma, u0_mean, u0_var, t).mean; };
  auto cond_second = [&](double b) {
    MeanVar s = ou_stats(b, mu, sigma, u0_mean, u0_var, t);
    return s.mean * s.mean + s.variance;
  };
  const double w = 1.0 / (hi - lo);
  double mean = w * adaptive_integral(cond_mean, lo, hi);
  double second = w * adaptive_integral(cond_second, lo, hi);
  return {mean, second - mean * mean};
}

std::array<double, 6> ou_random_damping_cumulants(int constraint_degree, double T,
                                                  double delta_t, double delta_tau,
                                                  int damping_level,
                                                  std::vector<StatSeries>* series_out) {
  Rule1D gl = gauss_rule_1d(RuleFamily::GaussLegendre, damping_level);
  std::array<double, 6> raw{};
  for (int j = 0; j < gl.order(); ++j) {
    const double b = 2.0 + gl.nodes[j];  // U(1,3) damping node

    RunConfig cfg;
    cfg.model_name = "ou";
    cfg.params = {{"b_u", b}, {"mu_u", 0.0}, {"sigma_u", 4.0}};
    cfg.T = T;
    cfg.delta_t = delta_t;
    cfg.delta_tau = delta_tau;
    cfg.forcing_modes = 2;
    // 4-point modes: increment moments exact to degree 7, as required for
    // sixth-cumulant accuracy (2-point modes already miss E[xi^4])
    cfg.forcing_level = 4;
    cfg.forcing_product = true;
    cfg.constraint_degree = constraint_degree;
    cfg.basis_mode = BasisMode::Hermite;
    cfg.stepper = Stepper::WeakRk2;
    cfg.initial = {{CoordInitial::Kind::Normal, 1.0, 0.04, 3}};

    StatSeries series = run(cfg);
    std::array<double, 6> cond = raw_from_cumulants_1d(series.cumulants.back());
    for (int i = 0; i < 6; ++i) raw[i] += gl.weights[j] * cond[i];
    if (series_out) series_out->push_back(std::move(series));
  }
  return cumulants_1d(raw);
}

ExperimentPreset preset(const std::string& name) {
  ExperimentPreset p;
  p.name = name;
  RunConfig& c = p.config;

  if (name == "fig1_ou_naive") {
    c.model_name = "ou";
    c.params = {{"b_u", 10.0}, {"mu_u", 0.1}, {"sigma_u", 4.0}};
    c.T = 1.0;
    c.delta_t = 1.0;  // single interval: no restarts
    c.delta_tau = 1e-4;
    c.forcing_modes = 16;
    c.forcing_level = 2;
    c.constraint_degree = 2;
    c.basis_mode = BasisMode::Hermite;
    c.stepper = Stepper::WeakRk2;
    c.initial = {{CoordInitial::Kind::Point, 1.0, 0.0, 1}};
    p.reference = [](double t) { return ou_stats(10.0, 0.1, 4.0, 1.0, 0.0, t); };
  } else if (name == "ex1_ou_random_damping") {
    c.model_name = "ou_random_damping";
    c.params = {{"mu_u", 0.2}, {"sigma_u", 4.0}};
    c.T = 4.0;
    c.delta_t = 0.05;
    c.delta_tau = 5e-4;
    c.forcing_modes = 2;
    c.forcing_level = 2;
    c.forcing_product = true;
    c.constraint_degree = 2;
    c.basis_mode = BasisMode::Hermite;
    c.stepper = Stepper::WeakRk2;
    c.initial = {{CoordInitial::Kind::Normal, 1.0, 0.04, 3},
                 {CoordInitial::Kind::Uniform, 1.0, 3.0, 8}};
    p.reference = [](double t) {
      return ou_random_damping_stats(0.2, 4.0, 1.0, 0.04, 1.0, 3.0, t);
    };
  } else if (name == "ex2_cubic") {
    c.model_name = "cubic";
    c.params = {{"sigma_u", 2.0}};
    c.T = 4.0;
    c.delta_t = 0.04;
    c.delta_tau = 1e-3;
    c.forcing_modes = 2;
    c.forcing_level = 3;
    c.constraint_degree = 8;
    c.basis_mode = BasisMode::Hermite;
    c.stepper = Stepper::WeakRk2;
    c.initial = {{CoordInitial::Kind::Point, 1.0, 0.0, 1}};
  } else if (name == "ex3_cir") {
    c.model_name = "cir";
    c.params = {{"b_u", 2.0}, {"mu_u", 0.6}, {"sigma_u", 0.5}};
    c.T = 3.0;
    c.delta_t = 0.1;
    c.delta_tau = 1e-3;
    c.forcing_modes = 2;
    c.forcing_level = 4;
    c.constraint_degree = 4;
    c.basis_mode = BasisMode::DataOrthonormal;
    c.stepper = Stepper::MilsteinCir;
    c.initial = {{CoordInitial::Kind::Point, 1.0, 0.0, 1}};
    p.reference = [](double t) { return cir_stats(2.0, 0.6, 0.5, 1.0, t); };
  } else if (name == "ex4_intermittent") {
    c.model_name = "intermittent2d";
    c.params = {{"a_u", 1.0}, {"b_u", 1.2}, {"b_v", 0.5}, {"sigma_u", 0.5}, {"sigma_v", 0.5}};
    c.T = 8.0;
    c.delta_t = 0.02;
    c.delta_tau = 2e-4;
    c.forcing_modes = 2;  // per driver; 4 forcing variables in total
    c.forcing_level = 2;
    c.constraint_degree = 5;
    c.basis_mode = BasisMode::DataOrthonormal;
    c.stepper = Stepper::WeakRk2;
    c.initial = {{CoordInitial::Kind::Normal, 1.0, 0.5 * 0.5 / (8.0 * 1.2), 3},
                 {CoordInitial::Kind::Normal, 0.0, 0.5 * 0.5 / (8.0 * 0.5), 3}};
  } else {
    throw std::invalid_argument("preset: unknown preset '" + name + "'");
  }
  return p;
}

}  // namespace dsgc
