#pragma once

#include <functional>
#include <string>

#include "dsgc/engine.hpp"

namespace dsgc {

/// Parse a flat `key = value` document (UTF-8, '#' comments). Unknown
/// keys are errors; missing optional keys take defaults. Throws
/// std::invalid_argument with a line number or key name.
RunConfig parse_config(const std::string& text);

/// Reference statistics for a preset, when an analytic one exists.
using ReferenceFn = std::function<MeanVar(double)>;

struct ExperimentPreset {
  std::string name;
  RunConfig config;
  ReferenceFn reference;  // may be null (oracle is cumulant-based or MC)
};

/// Presets mirroring the benchmark studies:
///   fig1_ou_naive, ex1_ou_random_damping, ex2_cubic, ex3_cir,
///   ex4_intermittent.
ExperimentPreset preset(const std::string& name);

/// OU with damping b ~ U(lo, hi): mean/variance by averaging the
/// conditional OU statistics over the damping law (adaptive quadrature).
MeanVar ou_random_damping_stats(double mu, double sigma, double u0_mean, double u0_var,
                                double lo, double hi, double t);

/// Terminal cumulants of the random-damping OU (mu = 0, sigma = 4,
/// b ~ U(1,3)) by collocation: one restart chain per Gauss-Legendre
/// damping node, raw solution moments averaged over the damping law.
/// The damping coordinate is conserved, so it is never compressed by a
/// restart; compressing it jointly with the solution loses the tail
/// information carried by the high damping moments.
/// Optionally returns the per-node series for diagnostics.
std::array<double, 6> ou_random_damping_cumulants(
    int constraint_degree, double T = 8.0, double delta_t = 0.1, double delta_tau = 1e-3,
    int damping_level = 8, std::vector<StatSeries>* series_out = nullptr);

}  // namespace dsgc
