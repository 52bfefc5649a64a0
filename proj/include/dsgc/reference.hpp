#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "dsgc/models.hpp"
#include "dsgc/propagate.hpp"

namespace dsgc {

struct MeanVar {
  double mean;
  double variance;
};

/// Analytic Ornstein-Uhlenbeck statistics at time t.
MeanVar ou_stats(double b, double mu, double sigma, double u0_mean, double u0_var, double t);

/// Analytic CIR statistics at time t for a deterministic start u0.
MeanVar cir_stats(double b, double mu, double sigma, double u0, double t);

/// Stationary cumulants of a 1D gradient system du = -V'(u) dt + sigma dW
/// from the invariant density exp(-2 V(u) / sigma^2), by adaptive
/// Gauss-Legendre quadrature.
std::array<double, 6> stationary_cumulants_gradient(
    const std::function<double(double)>& potential, double sigma);

/// Stationary cumulants of the cubic system du = -(u^2+1)u dt + sigma dW.
std::array<double, 6> stationary_cumulants_cubic(double sigma);

/// Stationary cumulants of an OU process with uniformly distributed
/// damping b ~ U(a, b) and mu = 0: a scale mixture of centered Gaussians
/// with conditional variance sigma^2/(2b); closed-form raw moments.
std::array<double, 6> mixture_cumulants_random_damping(double sigma, double damping_lo,
                                                       double damping_hi);

/// Adaptive composite Gauss-Legendre integral of f over [a, b].
double adaptive_integral(const std::function<double(double)>& f, double a, double b,
                         double rel_tol = 1e-12);

struct McSeries {
  std::vector<double> times;
  std::vector<Eigen::VectorXd> mean;       // per time, per repeat average
  std::vector<Eigen::VectorXd> variance;
  std::vector<double> mean_spread;         // across-repeat stddev of the mean, first coord
  std::vector<double> variance_spread;
};

/// Monte Carlo baseline with counter-based Gaussian increments: sample
/// streams depend only on (seed, repeat, sample), so results are
/// reproducible regardless of scheduling.
/// `initial` maps a Gaussian-draw callback to one initial state, letting
/// callers sample random initial conditions from the same stream.
using InitialSampler =
    std::function<Eigen::VectorXd(const std::function<double()>& gaussian)>;

McSeries monte_carlo(const SdeModel& model, Stepper stepper, double dtau, double T,
                     const InitialSampler& initial, long n_samples, std::uint64_t seed,
                     int repeats, int record_every = 100);

/// Standard normal draw from a counter-based generator.
double counter_gaussian(std::uint64_t seed, std::uint64_t counter);

}  // namespace dsgc
