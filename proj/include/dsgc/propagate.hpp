#pragma once

#include <Eigen/Dense>
#include <functional>
#include <utility>
#include <vector>

#include "dsgc/forcing.hpp"
#include "dsgc/models.hpp"
#include "dsgc/quadrature.hpp"

namespace dsgc {

enum class Stepper { Euler, WeakRk2, MilsteinCir };

/// Joint particle set {u^p x xi^q}: one state per (p, q) pair with
/// weight w^p * w^q. Weights sum to 1 (both source rules are normalized).
struct ParticleCloud {
  Eigen::MatrixXd states;   // (Qu*Qxi) x d
  Eigen::VectorXd weights;
  std::vector<std::pair<int, int>> provenance;  // (p, q) per row

  int size() const { return static_cast<int>(states.rows()); }
  int dimension() const { return static_cast<int>(states.cols()); }

  Eigen::VectorXd mean() const;
  Eigen::VectorXd variance() const;
};

Eigen::VectorXd step_euler(const SdeModel& model, const Eigen::VectorXd& u,
                           const Eigen::VectorXd& dW, double dtau);

/// Heun predictor-corrector on the drift, Euler treatment of the noise;
/// weak second order for the additive-noise models.
Eigen::VectorXd step_weak_rk2(const SdeModel& model, const Eigen::VectorXd& u,
                              const Eigen::VectorXd& dW, double dtau);

/// CIR-specific first-order Milstein step:
///   u + b (mu - u - sigma^2/(4b)) dtau + sigma sqrt(u) dW + (sigma^2/4) dW^2.
/// Negative intermediate states are clamped to eps; the caller counts
/// clamps via the optional counter.
Eigen::VectorXd step_milstein_cir(const SdeModel& model, const Eigen::VectorXd& u,
                                  const Eigen::VectorXd& dW, double dtau,
                                  long* clamp_counter = nullptr);

struct PropagationResult {
  ParticleCloud cloud;
  long clamp_events = 0;
};

/// Observer invoked during propagation with (time, states, weights);
/// `states` is the live cloud after the corresponding sub-step.
using CloudObserver =
    std::function<void(double, const Eigen::MatrixXd&, const Eigen::VectorXd&)>;

/// Evolve the product cloud {u^p x xi^q} across one restart interval.
/// The forcing vector xi has dimension n_drivers * K; driver m consumes
/// coordinates [m*K, (m+1)*K). Per-step increments for driver m are
/// dW_i = sum_k xi_{m*K+k} * table(i, k).
PropagationResult propagate_interval(const SdeModel& model,
                                     const QuadratureRule& u_rule,
                                     const QuadratureRule& xi_rule,
                                     const IncrementTable& table,
                                     Stepper stepper,
                                     const CloudObserver& observer = nullptr,
                                     int observe_every = 0);

}  // namespace dsgc
