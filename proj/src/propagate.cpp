#include "dsgc/propagate.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace dsgc {

Eigen::VectorXd ParticleCloud::mean() const {
  return states.transpose() * weights;
}

Eigen::VectorXd ParticleCloud::variance() const {
  Eigen::VectorXd m = mean();
  Eigen::VectorXd second = (states.array().square().matrix().transpose() * weights);
  return second - m.cwiseProduct(m);
}

Eigen::VectorXd step_euler(const SdeModel& model, const Eigen::VectorXd& u,
                           const Eigen::VectorXd& dW, double dtau) {
  return u + model.drift(u) * dtau + model.diffusion(u) * dW;
}

Eigen::VectorXd step_weak_rk2(const SdeModel& model, const Eigen::VectorXd& u,
                              const Eigen::VectorXd& dW, double dtau) {
  const Eigen::VectorXd noise = model.diffusion(u) * dW;
  const Eigen::VectorXd f0 = model.drift(u);
  const Eigen::VectorXd predictor = u + f0 * dtau + noise;
  return u + 0.5 * dtau * (f0 + model.drift(predictor)) + noise;
}

Eigen::VectorXd step_milstein_cir(const SdeModel& model, const Eigen::VectorXd& u,
                                  const Eigen::VectorXd& dW, double dtau,
                                  long* clamp_counter) {
  if (model.name != "cir")
    throw std::invalid_argument("step_milstein_cir: model must be cir");
  const double b = model.params.at("b_u");
  const double mu = model.params.at("mu_u");
  const double sigma = model.params.at("sigma_u");
  const double w = dW[0];
  double next = u[0] + b * (mu - u[0] - sigma * sigma / (4.0 * b)) * dtau +
                sigma * std::sqrt(std::max(u[0], 0.0)) * w +
                sigma * sigma / 4.0 * w * w;
  constexpr double kFloor = 1e-12;
  if (next < kFloor) {
    next = kFloor;
    if (clamp_counter) ++(*clamp_counter);
  }
  return Eigen::VectorXd::Constant(1, next);
}

PropagationResult propagate_interval(const SdeModel& model,
                                     const QuadratureRule& u_rule,
                                     const QuadratureRule& xi_rule,
                                     const IncrementTable& table,
                                     Stepper stepper,
                                     const CloudObserver& observer,
                                     int observe_every) {
  const int d = model.state_dim;
  const int modes = table.basis.modes;
  if (u_rule.dimension() != d)
    throw std::invalid_argument("propagate_interval: u_rule dimension mismatch");
  if (xi_rule.dimension() != model.n_drivers * modes)
    throw std::invalid_argument(
        "propagate_interval: xi_rule dimension must be n_drivers * K");

  const int np = u_rule.size();
  const int nq = xi_rule.size();
  const int steps = table.substeps;
  const double dtau = table.dtau();

  PropagationResult result;
  ParticleCloud& cloud = result.cloud;
  cloud.states.resize(np * nq, d);
  cloud.weights.resize(np * nq);
  cloud.provenance.reserve(np * nq);
  for (int p = 0; p < np; ++p)
    for (int q = 0; q < nq; ++q) {
      cloud.states.row(p * nq + q) = u_rule.nodes.row(p);
      cloud.weights[p * nq + q] = u_rule.weights[p] * xi_rule.weights[q];
      cloud.provenance.emplace_back(p, q);
    }

  // Brownian increments per (q, step, driver), shared across all p.
  // dW(q, i*n_drivers + m) = sum_k xi^q_{m*modes+k} table(i, k).
  Eigen::MatrixXd dw(nq, steps * model.n_drivers);
  for (int q = 0; q < nq; ++q)
    for (int m = 0; m < model.n_drivers; ++m) {
      Eigen::VectorXd block = xi_rule.nodes.row(q).segment(m * modes, modes).transpose();
      Eigen::VectorXd incr = table.coefficients * block;  // steps entries
      for (int i = 0; i < steps; ++i) dw(q, i * model.n_drivers + m) = incr[i];
    }

  Eigen::VectorXd u(d), dW(model.n_drivers);
  for (int i = 0; i < steps; ++i) {
    for (int row = 0; row < np * nq; ++row) {
      const int q = cloud.provenance[row].second;
      u = cloud.states.row(row).transpose();
      for (int m = 0; m < model.n_drivers; ++m) dW[m] = dw(q, i * model.n_drivers + m);
      switch (stepper) {
        case Stepper::Euler:
          u = step_euler(model, u, dW, dtau);
          break;
        case Stepper::WeakRk2:
          u = step_weak_rk2(model, u, dW, dtau);
          break;
        case Stepper::MilsteinCir:
          u = step_milstein_cir(model, u, dW, dtau, &result.clamp_events);
          break;
      }
      if (!u.allFinite()) {
        const auto [pp, qq] = cloud.provenance[row];
        throw std::runtime_error("propagate_interval: non-finite state at particle (p=" +
                                 std::to_string(pp) + ", q=" + std::to_string(qq) +
                                 ", step=" + std::to_string(i) + ")");
      }
      cloud.states.row(row) = u.transpose();
    }
    if (observer && observe_every > 0 && ((i + 1) % observe_every == 0 || i + 1 == steps)) {
      const double t = table.basis.t_start + (i + 1 == steps ? table.basis.length()
                                                             : (i + 1) * dtau);
      observer(t, cloud.states, cloud.weights);
    }
  }
  return result;
}

}  // namespace dsgc
