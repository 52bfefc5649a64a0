#include "dsgc/forcing.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dsgc {

SpectralBasis::SpectralBasis(double t0, double t1, int k)
    : t_start(t0), t_end(t1), modes(k) {
  if (!(t_end > t_start)) throw std::invalid_argument("SpectralBasis: t_end must exceed t_start");
  if (modes < 1) throw std::invalid_argument("SpectralBasis: need at least one mode");
}

double SpectralBasis::evaluate(int k, double t) const {
  const double dt = length();
  if (k == 1) return 1.0 / std::sqrt(dt);
  return std::sqrt(2.0 / dt) *
         std::cos((k - 1) * std::numbers::pi * (t - t_start) / dt);
}

double basis_integral(const SpectralBasis& basis, int k, double a, double b) {
  if (k < 1 || k > basis.modes) throw std::invalid_argument("basis_integral: mode out of range");
  const double eps = 1e-12 * std::max(1.0, basis.length());
  if (a < basis.t_start - eps || b > basis.t_end + eps || a > b + eps)
    throw std::invalid_argument("basis_integral: [a,b] outside basis interval");

  const double dt = basis.length();
  if (k == 1) return (b - a) / std::sqrt(dt);
  const double omega = (k - 1) * std::numbers::pi / dt;
  return std::sqrt(2.0 / dt) / omega *
         (std::sin(omega * (b - basis.t_start)) - std::sin(omega * (a - basis.t_start)));
}

IncrementTable increment_table(const SpectralBasis& basis, int substeps) {
  if (substeps < 1) throw std::invalid_argument("increment_table: substeps must be >= 1");
  IncrementTable table{basis, substeps, Eigen::MatrixXd(substeps, basis.modes)};
  const double dtau = basis.length() / substeps;
  for (int i = 0; i < substeps; ++i) {
    const double a = basis.t_start + i * dtau;
    const double b = (i + 1 == substeps) ? basis.t_end : basis.t_start + (i + 1) * dtau;
    for (int k = 1; k <= basis.modes; ++k)
      table.coefficients(i, k - 1) = basis_integral(basis, k, a, b);
  }
  return table;
}

QuadratureRule forcing_rule(int dimension, int level, bool product) {
  if (dimension < 1) throw std::invalid_argument("forcing_rule: dimension must be >= 1");
  if (level < 1) throw std::invalid_argument("forcing_rule: level must be >= 1");
  if (product) {
    std::vector<Rule1D> rules(dimension, gauss_rule_1d(RuleFamily::GaussHermite, level));
    return tensor_rule(rules);
  }
  return smolyak_rule(RuleFamily::GaussHermite, dimension, level);
}

}  // namespace dsgc
