#include "dsgc/models.hpp"

#include <cmath>
#include <stdexcept>

namespace dsgc {

namespace {

double get(const std::map<std::string, double>& params, const std::string& key) {
  auto it = params.find(key);
  if (it == params.end())
    throw std::invalid_argument("make_model: missing parameter '" + key + "'");
  return it->second;
}

}  // namespace

SdeModel make_model(const std::string& name, const std::map<std::string, double>& params) {
  SdeModel model;
  model.name = name;
  model.params = params;

  if (name == "ou") {
    const double b = get(params, "b_u"), mu = get(params, "mu_u"), sigma = get(params, "sigma_u");
    model.state_dim = 1;
    model.n_drivers = 1;
    model.drift = [b, mu](const Eigen::VectorXd& u) {
      return Eigen::VectorXd::Constant(1, b * (mu - u[0]));
    };
    model.diffusion = [sigma](const Eigen::VectorXd&) {
      return Eigen::MatrixXd::Constant(1, 1, sigma);
    };
  } else if (name == "ou_random_damping") {
    // State (u, b_u) with db_u = 0; the damping rides along as a coordinate.
    const double mu = get(params, "mu_u"), sigma = get(params, "sigma_u");
    model.state_dim = 2;
    model.n_drivers = 1;
    model.drift = [mu](const Eigen::VectorXd& u) {
      Eigen::VectorXd f(2);
      f[0] = u[1] * (mu - u[0]);
      f[1] = 0.0;
      return f;
    };
    model.diffusion = [sigma](const Eigen::VectorXd&) {
      Eigen::MatrixXd s = Eigen::MatrixXd::Zero(2, 1);
      s(0, 0) = sigma;
      return s;
    };
  } else if (name == "cubic") {
    const double sigma = get(params, "sigma_u");
    model.state_dim = 1;
    model.n_drivers = 1;
    model.drift = [](const Eigen::VectorXd& u) {
      return Eigen::VectorXd::Constant(1, -(u[0] * u[0] + 1.0) * u[0]);
    };
    model.diffusion = [sigma](const Eigen::VectorXd&) {
      return Eigen::MatrixXd::Constant(1, 1, sigma);
    };
  } else if (name == "cir") {
    const double b = get(params, "b_u"), mu = get(params, "mu_u"), sigma = get(params, "sigma_u");
    if (2.0 * b * mu < sigma * sigma)
      throw std::invalid_argument("make_model: cir requires 2 b_u mu_u >= sigma_u^2");
    model.state_dim = 1;
    model.n_drivers = 1;
    model.drift = [b, mu](const Eigen::VectorXd& u) {
      return Eigen::VectorXd::Constant(1, b * (mu - u[0]));
    };
    model.diffusion = [sigma](const Eigen::VectorXd& u) {
      return Eigen::MatrixXd::Constant(1, 1, sigma * std::sqrt(std::max(u[0], 0.0)));
    };
  } else if (name == "intermittent2d") {
    const double a_u = get(params, "a_u"), b_u = get(params, "b_u"), b_v = get(params, "b_v");
    const double sigma_u = get(params, "sigma_u"), sigma_v = get(params, "sigma_v");
    model.state_dim = 2;
    model.n_drivers = 2;
    model.drift = [a_u, b_u, b_v](const Eigen::VectorXd& x) {
      Eigen::VectorXd f(2);
      f[0] = -(b_u + a_u * x[1]) * x[0];
      f[1] = -b_v * x[1];
      return f;
    };
    model.diffusion = [sigma_u, sigma_v](const Eigen::VectorXd&) {
      Eigen::MatrixXd s = Eigen::MatrixXd::Zero(2, 2);
      s(0, 0) = sigma_u;
      s(1, 1) = sigma_v;
      return s;
    };
  } else {
    throw std::invalid_argument("make_model: unknown model '" + name + "'");
  }
  return model;
}

}  // namespace dsgc
