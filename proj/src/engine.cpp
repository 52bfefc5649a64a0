#include "dsgc/engine.hpp"

#include <cmath>
#include <stdexcept>

#include "dsgc/moments.hpp"

namespace dsgc {

namespace {

bool near_integer(double x) { return std::abs(x - std::lround(x)) < 1e-9 * std::max(1.0, x); }

}  // namespace

void RunConfig::validate() const {
  if (model_name.empty()) throw std::invalid_argument("config: model name missing");
  if (!(T > 0.0)) throw std::invalid_argument("config: T must be positive");
  if (!(delta_t > 0.0) || !(delta_tau > 0.0))
    throw std::invalid_argument("config: delta_t and delta_tau must be positive");
  if (!near_integer(T / delta_t))
    throw std::invalid_argument("config: T / delta_t must be an integer");
  if (!near_integer(delta_t / delta_tau))
    throw std::invalid_argument("config: delta_t / delta_tau must be an integer");
  if (constraint_degree < 1) throw std::invalid_argument("config: constraint_degree must be >= 1");
  if (forcing_modes < 1) throw std::invalid_argument("config: forcing_modes must be >= 1");
  if (forcing_level < 1) throw std::invalid_argument("config: forcing_level must be >= 1");
  if (output_cadence < 1) throw std::invalid_argument("config: output_cadence must be >= 1");
}

int RunConfig::restart_count() const { return static_cast<int>(std::lround(T / delta_t)); }
int RunConfig::steps_per_interval() const {
  return static_cast<int>(std::lround(delta_t / delta_tau));
}

QuadratureRule initial_rule(const RunConfig& config) {
  if (config.explicit_initial_rule) return *config.explicit_initial_rule;

  SdeModel model = make_model(config.model_name, config.params);
  if (static_cast<int>(config.initial.size()) != model.state_dim)
    throw std::invalid_argument("initial_rule: one initial spec per state coordinate required");

  std::vector<Eigen::VectorXd> nodes_1d, weights_1d;
  for (const CoordInitial& spec : config.initial) {
    switch (spec.kind) {
      case CoordInitial::Kind::Point: {
        nodes_1d.push_back(Eigen::VectorXd::Constant(1, spec.p1));
        weights_1d.push_back(Eigen::VectorXd::Constant(1, 1.0));
        break;
      }
      case CoordInitial::Kind::Normal: {
        Rule1D r = gauss_rule_1d(RuleFamily::GaussHermite, spec.level);
        nodes_1d.push_back(spec.p1 + std::sqrt(spec.p2) * r.nodes.array());
        weights_1d.push_back(r.weights);
        break;
      }
      case CoordInitial::Kind::Uniform: {
        Rule1D r = gauss_rule_1d(RuleFamily::GaussLegendre, spec.level);
        nodes_1d.push_back(spec.p1 + 0.5 * (spec.p2 - spec.p1) * (r.nodes.array() + 1.0));
        weights_1d.push_back(r.weights);
        break;
      }
    }
  }

  const int d = static_cast<int>(nodes_1d.size());
  int count = 1;
  for (const auto& n : nodes_1d) count *= static_cast<int>(n.size());

  QuadratureRule rule;
  rule.nodes.resize(count, d);
  rule.weights.resize(count);
  std::vector<int> idx(d, 0);
  for (int p = 0; p < count; ++p) {
    double w = 1.0;
    for (int i = 0; i < d; ++i) {
      rule.nodes(p, i) = nodes_1d[i][idx[i]];
      w *= weights_1d[i][idx[i]];
    }
    rule.weights[p] = w;
    for (int i = d - 1; i >= 0; --i) {
      if (++idx[i] < nodes_1d[i].size()) break;
      idx[i] = 0;
    }
  }
  return rule;
}

namespace {

void record_stats(StatSeries& series, double t, const Eigen::MatrixXd& states,
                  const Eigen::VectorXd& weights) {
  const int d = static_cast<int>(states.cols());
  Eigen::VectorXd mean = states.transpose() * weights;
  Eigen::VectorXd second = states.array().square().matrix().transpose() * weights;
  Eigen::VectorXd var = second - mean.cwiseProduct(mean);
  for (int i = 0; i < d; ++i) {
    if (var[i] < 0.0) {
      var[i] = 0.0;
      ++series.variance_clamp_count;
    }
  }
  series.times.push_back(t);
  series.mean.push_back(mean);
  series.variance.push_back(var);
}

}  // namespace

StatSeries run(const RunConfig& config) {
  config.validate();
  SdeModel model = make_model(config.model_name, config.params);

  const int n_intervals = config.restart_count();
  const int steps = config.steps_per_interval();
  const int N = config.constraint_degree;
  const int d = model.state_dim;

  // Built once; reused for every restart interval.
  const QuadratureRule xi_rule =
      forcing_rule(model.n_drivers * config.forcing_modes, config.forcing_level,
                   config.forcing_product);
  const SpectralBasis basis(0.0, config.delta_t, config.forcing_modes);
  const IncrementTable table = increment_table(basis, steps);

  StatSeries series;
  series.forcing_rule_builds = 1;

  QuadratureRule u_rule = initial_rule(config);
  if (u_rule.dimension() != d)
    throw std::invalid_argument("run: initial rule dimension mismatch");

  const int moment_degree = std::max(2 * N, 6);
  MultiIndexSet moment_set(d, moment_degree);

  for (int j = 0; j < n_intervals; ++j) {
    const double t_offset = j * config.delta_t;
    auto observer = [&](double t_local, const Eigen::MatrixXd& states,
                        const Eigen::VectorXd& weights) {
      record_stats(series, t_offset + t_local, states, weights);
    };

    PropagationResult prop;
    try {
      prop = propagate_interval(model, u_rule, xi_rule, table, config.stepper, observer,
                                config.output_cadence);
    } catch (const std::runtime_error& e) {
      throw std::runtime_error("run: restart " + std::to_string(j) + " failed: " + e.what());
    }

    MomentVector moments = estimate_moments(prop.cloud, moment_set);

    // Marginal cumulants of the first coordinate at the restart time.
    std::array<double, 6> raw{};
    for (int k = 1; k <= 6; ++k) {
      MultiIndex alpha(d, 0);
      alpha[0] = k;
      raw[k - 1] = moments.moment(alpha);
    }
    series.cumulant_times.push_back(t_offset + config.delta_t);
    series.cumulants.push_back(cumulants_1d(raw));

    RestartRecord rec;
    rec.t = t_offset + config.delta_t;
    rec.clamp_events = prop.clamp_events;
    rec.forcing_nodes = xi_rule.size();
    try {
      auto [next_rule, diag] = build_rule(prop.cloud, config.basis_mode, N, moments);
      rec.rule = diag;
      u_rule = std::move(next_rule);
    } catch (const std::runtime_error& e) {
      throw std::runtime_error("run: rule synthesis at restart " + std::to_string(j) +
                               " failed: " + e.what());
    }
    series.diagnostics.push_back(rec);
  }
  return series;
}

StatSeries naive_run(const RunConfig& config) {
  RunConfig single = config;
  single.delta_t = config.T;
  return run(single);
}

ErrorSeries error_series(const StatSeries& series,
                         const std::function<MeanVar(double)>& reference, int coord) {
  ErrorSeries out;
  for (size_t i = 0; i < series.times.size(); ++i) {
    const double t = series.times[i];
    const MeanVar ref = reference(t);
    const double m = series.mean[i][coord], v = series.variance[i][coord];
    out.times.push_back(t);
    if (ref.mean != 0.0) {
      out.mean_error.push_back(std::abs((m - ref.mean) / ref.mean));
      out.mean_absolute.push_back(false);
    } else {
      out.mean_error.push_back(std::abs(m));
      out.mean_absolute.push_back(true);
    }
    if (ref.variance != 0.0) {
      out.var_error.push_back(std::abs((v - ref.variance) / ref.variance));
      out.var_absolute.push_back(false);
    } else {
      out.var_error.push_back(std::abs(v));
      out.var_absolute.push_back(true);
    }
  }
  return out;
}

}  // namespace dsgc
