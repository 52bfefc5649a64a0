#pragma once

#include <Eigen/Dense>
#include <array>
#include <utility>

#include "dsgc/multi_index.hpp"
#include "dsgc/propagate.hpp"

namespace dsgc {

/// Mixed moments E[u^alpha] over a multi-index set.
struct MomentVector {
  MultiIndexSet index_set;
  Eigen::VectorXd values;  // one per member, graded-lex order

  double operator[](int k) const { return values[k]; }
  double moment(const MultiIndex& alpha) const;

  /// Restriction to a lower degree (graded-lex prefix).
  MomentVector truncated(int degree) const;
};

/// v = (1/scale) * whiten * (u - shift); inverse undoes it.
struct AffineTransform {
  Eigen::VectorXd shift;
  Eigen::MatrixXd whiten;          // inverse Cholesky factor of the covariance
  Eigen::MatrixXd whiten_inverse;
  double scale = 1.0;
  double covariance_condition = 1.0;

  Eigen::VectorXd forward(const Eigen::VectorXd& u) const;
  Eigen::VectorXd inverse(const Eigen::VectorXd& v) const;
};

/// M polynomials expressed in the monomial basis of the same index set;
/// coeffs is lower triangular in graded-lex order (row k = T_k).
struct PolynomialBasis {
  MultiIndexSet index_set;
  Eigen::MatrixXd coeffs;
};

MomentVector estimate_moments(const ParticleCloud& cloud, const MultiIndexSet& index_set);

/// Raw moments m_1..m_6 -> cumulants k_1..k_6 via the standard recursion
/// k_n = m_n - sum_{j=1}^{n-1} C(n-1, j-1) k_j m_{n-j}.
std::array<double, 6> cumulants_1d(const std::array<double, 6>& raw_moments);

/// Inverse of cumulants_1d.
std::array<double, 6> raw_from_cumulants_1d(const std::array<double, 6>& cumulants);

/// Mean-zero, identity-covariance, max-moment-1 preconditioning: returns
/// the transform and the moments of the transformed variable. The scalar
/// scale is chosen so the largest transformed moment magnitude is 1.
std::pair<AffineTransform, MomentVector> standardize(const MomentVector& moments);

/// Push moments through an affine map v = (1/s) B (u - c).
MomentVector transform_moments(const MomentVector& moments, const AffineTransform& t);

/// Orthonormal polynomials for the measure behind `moments` (degree 2N
/// moments required for a degree-N basis), by modified Gram-Schmidt with
/// one re-orthogonalization pass.
PolynomialBasis gram_schmidt_basis(const MomentVector& moments);

/// Monomial basis (identity coefficients).
PolynomialBasis monomial_basis(const MultiIndexSet& index_set);

/// Products of normalized probabilists' Hermite polynomials.
PolynomialBasis hermite_basis(const MultiIndexSet& index_set);

/// All M basis polynomial values at a point.
Eigen::VectorXd eval_basis(const PolynomialBasis& basis, const Eigen::VectorXd& u);

/// Monomial values u^alpha for every alpha in the set.
Eigen::VectorXd eval_monomials(const MultiIndexSet& index_set, const Eigen::VectorXd& u);

}  // namespace dsgc
