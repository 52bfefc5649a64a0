#include "dsgc/moments.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

namespace dsgc {

double MomentVector::moment(const MultiIndex& alpha) const {
  int k = index_set.find(alpha);
  if (k < 0) throw std::out_of_range("MomentVector: multi-index not in set");
  return values[k];
}

MomentVector MomentVector::truncated(int degree) const {
  if (degree > index_set.max_degree())
    throw std::invalid_argument("MomentVector::truncated: degree exceeds set");
  MultiIndexSet sub(index_set.dimension(), degree);
  MomentVector out{sub, values.head(sub.size())};
  return out;
}

Eigen::VectorXd AffineTransform::forward(const Eigen::VectorXd& u) const {
  return (whiten * (u - shift)) / scale;
}

Eigen::VectorXd AffineTransform::inverse(const Eigen::VectorXd& v) const {
  return shift + scale * (whiten_inverse * v);
}

Eigen::VectorXd eval_monomials(const MultiIndexSet& index_set, const Eigen::VectorXd& u) {
  Eigen::VectorXd vals(index_set.size());
  vals[0] = 1.0;
  for (int k = 1; k < index_set.size(); ++k)
    vals[k] = vals[index_set.parent(k)] * u[index_set.parent_coord(k)];
  return vals;
}

MomentVector estimate_moments(const ParticleCloud& cloud, const MultiIndexSet& index_set) {
  if (cloud.dimension() != index_set.dimension())
    throw std::invalid_argument("estimate_moments: dimension mismatch");
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(index_set.size());
  for (int p = 0; p < cloud.size(); ++p)
    acc += cloud.weights[p] * eval_monomials(index_set, cloud.states.row(p).transpose());
  for (int k = 0; k < index_set.size(); ++k)
    if (!std::isfinite(acc[k]))
      throw std::runtime_error("estimate_moments: non-finite moment at index " +
                               std::to_string(k));
  return MomentVector{index_set, acc};
}

std::array<double, 6> cumulants_1d(const std::array<double, 6>& m) {
  std::array<double, 6> k{};
  for (int n = 1; n <= 6; ++n) {
    double s = m[n - 1];
    for (int j = 1; j < n; ++j)
      s -= static_cast<double>(binomial(n - 1, j - 1)) * k[j - 1] * m[n - j - 1];
    k[n - 1] = s;
  }
  return k;
}

std::array<double, 6> raw_from_cumulants_1d(const std::array<double, 6>& k) {
  std::array<double, 6> m{};
  for (int n = 1; n <= 6; ++n) {
    double s = k[n - 1];
    for (int j = 1; j < n; ++j)
      s += static_cast<double>(binomial(n - 1, j - 1)) * k[j - 1] * m[n - j - 1];
    m[n - 1] = s;
  }
  return m;
}

namespace {

using Poly = std::map<MultiIndex, double>;

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ia, ca] : a)
    for (const auto& [ib, cb] : b) {
      MultiIndex sum = ia;
      for (size_t i = 0; i < sum.size(); ++i) sum[i] += ib[i];
      out[sum] += ca * cb;
    }
  return out;
}

}  // namespace

MomentVector transform_moments(const MomentVector& moments, const AffineTransform& t) {
  const MultiIndexSet& set = moments.index_set;
  const int d = set.dimension();

  // Linear factors v_i = sum_j B_ij u_j + c_i with B = whiten/scale.
  Eigen::MatrixXd B = t.whiten / t.scale;
  Eigen::VectorXd c = -B * t.shift;
  std::vector<Poly> factor(d);
  for (int i = 0; i < d; ++i) {
    Poly p;
    if (c[i] != 0.0) p[MultiIndex(d, 0)] = c[i];
    for (int j = 0; j < d; ++j) {
      if (B(i, j) != 0.0) {
        MultiIndex e(d, 0);
        e[j] = 1;
        p[e] += B(i, j);
      }
    }
    factor[i] = p;
  }

  Eigen::VectorXd out(set.size());
  // Expand v^alpha by walking the graded-lex parent chain so each
  // polynomial is one multiplication away from an already-expanded one.
  std::vector<Poly> expanded(set.size());
  expanded[0][MultiIndex(d, 0)] = 1.0;
  out[0] = moments.values[0];
  for (int k = 1; k < set.size(); ++k) {
    expanded[k] = poly_mul(expanded[set.parent(k)], factor[set.parent_coord(k)]);
    double s = 0.0;
    for (const auto& [beta, coeff] : expanded[k]) s += coeff * moments.moment(beta);
    out[k] = s;
  }
  return MomentVector{set, out};
}

std::pair<AffineTransform, MomentVector> standardize(const MomentVector& moments) {
  const MultiIndexSet& set = moments.index_set;
  const int d = set.dimension();
  if (set.max_degree() < 2)
    throw std::invalid_argument("standardize: moments up to degree 2 required");

  Eigen::VectorXd mean(d);
  for (int i = 0; i < d; ++i) {
    MultiIndex e(d, 0);
    e[i] = 1;
    mean[i] = moments.moment(e);
  }
  Eigen::MatrixXd cov(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      MultiIndex e(d, 0);
      e[i] += 1;
      e[j] += 1;
      cov(i, j) = moments.moment(e) - mean[i] * mean[j];
    }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
  const double min_eig = eig.eigenvalues().minCoeff();
  if (min_eig <= 0.0)
    throw std::runtime_error("standardize: covariance not positive definite (smallest eigenvalue " +
                             std::to_string(min_eig) + ")");

  Eigen::LLT<Eigen::MatrixXd> llt(cov);
  Eigen::MatrixXd L = llt.matrixL();

  AffineTransform t;
  t.shift = mean;
  t.whiten_inverse = L;
  t.whiten = L.triangularView<Eigen::Lower>().solve(Eigen::MatrixXd::Identity(d, d));
  t.scale = 1.0;
  t.covariance_condition = eig.eigenvalues().maxCoeff() / min_eig;

  MomentVector whitened = transform_moments(moments, t);

  // Scalar scale s so that max_alpha |s^-|alpha| m_alpha| = 1: attained
  // at s = max |m_alpha|^(1/|alpha|) over the nonconstant indices.
  double s = 1.0;
  for (int k = 1; k < set.size(); ++k) {
    double deg = total_degree(set[k]);
    double cand = std::pow(std::abs(whitened.values[k]), 1.0 / deg);
    s = std::max(s, cand);
  }
  t.scale = s;
  MomentVector scaled = whitened;
  for (int k = 1; k < set.size(); ++k)
    scaled.values[k] = whitened.values[k] / std::pow(s, total_degree(set[k]));

  return {t, scaled};
}

PolynomialBasis monomial_basis(const MultiIndexSet& index_set) {
  return PolynomialBasis{index_set,
                         Eigen::MatrixXd::Identity(index_set.size(), index_set.size())};
}

PolynomialBasis hermite_basis(const MultiIndexSet& index_set) {
  const int n = index_set.max_degree();
  // 1D probabilists' Hermite coefficients: He_{k+1} = x He_k - k He_{k-1}.
  Eigen::MatrixXd he = Eigen::MatrixXd::Zero(n + 1, n + 1);
  he(0, 0) = 1.0;
  if (n >= 1) he(1, 1) = 1.0;
  for (int k = 1; k < n; ++k) {
    for (int j = 0; j <= k; ++j) he(k + 1, j + 1) += he(k, j);
    for (int j = 0; j <= n; ++j) he(k + 1, j) -= k * he(k - 1, j);
  }
  std::vector<double> norm(n + 1, 1.0);  // 1/sqrt(k!)
  for (int k = 1; k <= n; ++k) norm[k] = norm[k - 1] / std::sqrt(static_cast<double>(k));

  const int M = index_set.size();
  Eigen::MatrixXd coeffs = Eigen::MatrixXd::Zero(M, M);
  for (int k = 0; k < M; ++k) {
    const MultiIndex& alpha = index_set[k];
    // product over dimensions of He_{alpha_i}(u_i) / sqrt(alpha_i!)
    for (int m = 0; m < M; ++m) {
      const MultiIndex& beta = index_set[m];
      double c = 1.0;
      bool ok = true;
      for (int i = 0; i < index_set.dimension() && ok; ++i) {
        if (beta[i] > alpha[i]) {
          ok = false;
          break;
        }
        c *= he(alpha[i], beta[i]);
      }
      if (ok && c != 0.0) {
        double scale = 1.0;
        for (int i = 0; i < index_set.dimension(); ++i) scale *= norm[alpha[i]];
        coeffs(k, m) = c * scale;
      }
    }
  }
  return PolynomialBasis{index_set, coeffs};
}

PolynomialBasis gram_schmidt_basis(const MomentVector& moments) {
  const MultiIndexSet& full = moments.index_set;
  if (full.max_degree() % 2 != 0)
    throw std::invalid_argument("gram_schmidt_basis: moments must extend to even degree 2N");
  const int N = full.max_degree() / 2;
  MultiIndexSet set(full.dimension(), N);
  const int M = set.size();

  // Gram matrix of monomials under the moment inner product.
  Eigen::MatrixXd G(M, M);
  for (int a = 0; a < M; ++a)
    for (int b = 0; b <= a; ++b) {
      MultiIndex sum = set[a];
      for (size_t i = 0; i < sum.size(); ++i) sum[i] += set[b][i];
      G(a, b) = G(b, a) = moments.moment(sum);
    }

  Eigen::MatrixXd coeffs = Eigen::MatrixXd::Zero(M, M);
  for (int k = 0; k < M; ++k) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(M);
    v[k] = 1.0;
    // modified Gram-Schmidt plus one re-orthogonalization pass
    for (int pass = 0; pass < 2; ++pass)
      for (int j = 0; j < k; ++j) {
        double proj = coeffs.row(j) * (G * v);
        v -= proj * coeffs.row(j).transpose();
      }
    double norm2 = v.dot(G * v);
    if (!(norm2 > 1e-14 * std::max(1.0, G(k, k))))
      throw std::runtime_error(
          "gram_schmidt_basis: moment matrix lost positive definiteness at degree " +
          std::to_string(total_degree(set[k])));
    coeffs.row(k) = v.transpose() / std::sqrt(norm2);
  }
  return PolynomialBasis{set, coeffs};
}

Eigen::VectorXd eval_basis(const PolynomialBasis& basis, const Eigen::VectorXd& u) {
  return basis.coeffs * eval_monomials(basis.index_set, u);
}

}  // namespace dsgc
