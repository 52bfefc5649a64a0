#pragma once

#include <Eigen/Dense>
#include <functional>
#include <map>
#include <string>

namespace dsgc {

/// One benchmark SDE: du = drift(u) dt + diffusion(u) dW, with
/// `n_drivers` independent Brownian motions.
struct SdeModel {
  std::string name;
  int state_dim = 1;
  int n_drivers = 1;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> drift;
  std::function<Eigen::MatrixXd(const Eigen::VectorXd&)> diffusion;  // d x n_drivers
  std::map<std::string, double> params;
};

/// Supported names: ou, ou_random_damping, cubic, cir, intermittent2d.
///
///   ou:                du = b_u (mu_u - u) dt + sigma_u dW
///   ou_random_damping: state (u, b_u), db_u = 0, damping carried as a
///                      state coordinate
///   cubic:             du = -(u^2 + 1) u dt + sigma_u dW
///   cir:               du = b_u (mu_u - u) dt + sigma_u sqrt(u) dW,
///                      requires 2 b_u mu_u >= sigma_u^2
///   intermittent2d:    du = -(b_u + a_u v) u dt + sigma_u dW_u
///                      dv = -b_v v dt + sigma_v dW_v
SdeModel make_model(const std::string& name, const std::map<std::string, double>& params);

}  // namespace dsgc
