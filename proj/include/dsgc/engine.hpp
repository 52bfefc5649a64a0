#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dsgc/models.hpp"
#include "dsgc/propagate.hpp"
#include "dsgc/reference.hpp"
#include "dsgc/sparse_rule.hpp"

namespace dsgc {

/// Initial distribution of one state coordinate.
struct CoordInitial {
  enum class Kind { Point, Normal, Uniform } kind = Kind::Point;
  double p1 = 0.0;  // point: value; normal: mean; uniform: lower
  double p2 = 0.0;  // normal: variance; uniform: upper
  int level = 1;    // quadrature order for the coordinate
};

struct RunConfig {
  std::string model_name;
  std::map<std::string, double> params;

  double T = 1.0;
  double delta_t = 0.1;    // restart interval
  double delta_tau = 1e-3; // integrator step

  int forcing_modes = 2;   // K per driver
  int forcing_level = 2;   // lambda_xi
  bool forcing_product = false;

  int constraint_degree = 4;  // N
  BasisMode basis_mode = BasisMode::Hermite;
  Stepper stepper = Stepper::WeakRk2;

  std::vector<CoordInitial> initial;
  std::optional<QuadratureRule> explicit_initial_rule;

  int output_cadence = 10;  // record statistics every this many sub-steps
  std::uint64_t seed = 0;   // Monte Carlo baseline only

  void validate() const;  // throws std::invalid_argument
  int restart_count() const;
  int steps_per_interval() const;
};

struct RestartRecord {
  double t;
  RuleDiagnostics rule;
  long clamp_events = 0;
  int forcing_nodes = 0;
};

struct StatSeries {
  std::vector<double> times;
  std::vector<Eigen::VectorXd> mean;
  std::vector<Eigen::VectorXd> variance;

  std::vector<double> cumulant_times;                 // restart times
  std::vector<std::array<double, 6>> cumulants;      // first state coordinate

  std::vector<RestartRecord> diagnostics;
  long variance_clamp_count = 0;
  int forcing_rule_builds = 0;  // stays 1: the rule is shared across restarts
};

/// Quadrature rule for the initial condition: per-coordinate Gauss rules
/// (Hermite for normal, Legendre for uniform, a single node for point
/// masses) combined by tensor product, or an explicit rule if supplied.
QuadratureRule initial_rule(const RunConfig& config);

/// The full restart loop: propagate the product cloud over each interval,
/// estimate moments, synthesize the next solution rule, record statistics.
StatSeries run(const RunConfig& config);

/// Single-interval collocation over [0, T] with no restarts.
StatSeries naive_run(const RunConfig& config);

struct ErrorSeries {
  std::vector<double> times;
  std::vector<double> mean_error;
  std::vector<double> var_error;
  std::vector<bool> mean_absolute;  // reference was zero; absolute error reported
  std::vector<bool> var_absolute;
};

ErrorSeries error_series(const StatSeries& series,
                         const std::function<MeanVar(double)>& reference, int coord = 0);

}  // namespace dsgc
