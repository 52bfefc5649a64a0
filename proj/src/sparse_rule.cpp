#include "dsgc/sparse_rule.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace dsgc {

ConstraintSystem assemble(const Eigen::MatrixXd& nodes, const PolynomialBasis& basis,
                          const MomentVector& moments) {
  if (nodes.cols() != basis.index_set.dimension())
    throw std::invalid_argument("assemble: node dimension mismatch");
  if (moments.index_set.max_degree() < basis.index_set.max_degree())
    throw std::invalid_argument("assemble: moments do not cover the basis degree");

  const int M = basis.index_set.size();
  const int Q = static_cast<int>(nodes.rows());

  ConstraintSystem sys;
  sys.basis = basis;
  sys.A.resize(M, Q);
  for (int p = 0; p < Q; ++p)
    sys.A.col(p) = eval_basis(basis, nodes.row(p).transpose());
  // b_k = E[T_k(u)] via the linear map from monomial moments.
  sys.b = basis.coeffs * moments.truncated(basis.index_set.max_degree()).values;

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(sys.A);
  const auto& sv = svd.singularValues();
  sys.condition_estimate = sv[sv.size() - 1] > 0.0 ? sv[0] / sv[sv.size() - 1]
                                                   : std::numeric_limits<double>::infinity();
  return sys;
}

Eigen::VectorXd extract_sparse(const ConstraintSystem& sys, Eigen::VectorXd w,
                               ExtractionInfo* info) {
  const int M = static_cast<int>(sys.A.rows());
  const int Q = static_cast<int>(sys.A.cols());
  if (w.size() != Q) throw std::invalid_argument("extract_sparse: weight size mismatch");

  const double b_scale = std::max(1.0, sys.b.cwiseAbs().maxCoeff());
  if ((sys.A * w - sys.b).cwiseAbs().maxCoeff() > 1e-7 * b_scale)
    throw std::invalid_argument("extract_sparse: initial weights violate constraints");

  const double zero_tol = 1e-13 * std::max(1.0, w.cwiseAbs().maxCoeff());
  ExtractionInfo local;
  ExtractionInfo& out = info ? *info : local;

  while (true) {
    std::vector<int> active;
    for (int k = 0; k < Q; ++k)
      if (std::abs(w[k]) > zero_tol) active.push_back(k);
    for (int k = 0; k < Q; ++k)
      if (std::abs(w[k]) <= zero_tol) w[k] = 0.0;
    const int n = static_cast<int>(active.size());
    if (n <= M) break;

    // Kernel vector of the active-column submatrix from the QR of its
    // transpose: the trailing column of Q is orthogonal to range(A^T).
    Eigen::MatrixXd At(n, M);
    for (int i = 0; i < n; ++i) At.row(i) = sys.A.col(active[i]).transpose();
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(At);
    Eigen::MatrixXd Qfull = qr.householderQ();
    Eigen::VectorXd z = Qfull.col(n - 1);
    if (z.cwiseAbs().maxCoeff() < 1e-13) {
      out.null_space_exhausted = true;
      break;
    }

    auto find_beta = [&](const Eigen::VectorXd& dir, double& beta, int& hit) {
      beta = 0.0;
      hit = -1;
      for (int i = 0; i < n; ++i) {
        const double wi = w[active[i]], zi = dir[i];
        if (zi != 0.0 && ((wi > 0) != (zi > 0)) && std::abs(zi) > 1e-14) {
          double r = std::abs(wi / zi);
          if (hit < 0 || r < beta) {
            beta = r;
            hit = i;
          }
        }
      }
    };

    double beta;
    int hit;
    find_beta(z, beta, hit);
    if (hit < 0) {
      z = -z;
      find_beta(z, beta, hit);
      out.sign_flip_used = true;
      if (hit < 0) {
        out.null_space_exhausted = true;
        break;
      }
    }

    for (int i = 0; i < n; ++i) w[active[i]] += beta * z[i];
    w[active[hit]] = 0.0;  // the minimizing entry is zero by construction
    ++out.iterations;
  }

  if (out.iterations > 0) {
    // refit the surviving weights in one least-squares solve to shed the
    // roundoff accumulated across elimination passes
    std::vector<int> support;
    for (int k = 0; k < Q; ++k)
      if (w[k] != 0.0) support.push_back(k);
    const int n = static_cast<int>(support.size());
    Eigen::MatrixXd As(M, n);
    for (int i = 0; i < n; ++i) As.col(i) = sys.A.col(support[i]);
    Eigen::VectorXd ws = As.colPivHouseholderQr().solve(sys.b);
    if ((As * ws - sys.b).cwiseAbs().maxCoeff() <=
        (sys.A * w - sys.b).cwiseAbs().maxCoeff())
      for (int i = 0; i < n; ++i) w[support[i]] = ws[i];
  }
  return w;
}

std::pair<QuadratureRule, RuleDiagnostics> build_rule(const ParticleCloud& cloud,
                                                      BasisMode basis_mode,
                                                      int constraint_degree,
                                                      const MomentVector& moments) {
  const int N = constraint_degree;
  const int d = cloud.dimension();
  const int need = (basis_mode == BasisMode::DataOrthonormal) ? 2 * N : N;
  if (moments.index_set.max_degree() < need)
    throw std::invalid_argument("build_rule: moments do not cover the required degree");

  RuleDiagnostics diag;

  auto [transform, std_moments_full] = standardize(moments.truncated(std::max(need, 2)));

  Eigen::MatrixXd std_nodes(cloud.size(), d);
  for (int p = 0; p < cloud.size(); ++p)
    std_nodes.row(p) = transform.forward(cloud.states.row(p).transpose()).transpose();

  MultiIndexSet constraint_set(d, N);
  auto make_basis = [&](BasisMode mode) -> PolynomialBasis {
    switch (mode) {
      case BasisMode::Monomial:
        return monomial_basis(constraint_set);
      case BasisMode::Hermite:
        return hermite_basis(constraint_set);
      case BasisMode::DataOrthonormal:
        return gram_schmidt_basis(std_moments_full.truncated(2 * N));
    }
    throw std::logic_error("unknown basis mode");
  };

  auto attempt = [&](BasisMode mode) {
    PolynomialBasis basis = make_basis(mode);
    ConstraintSystem sys = assemble(std_nodes, basis, std_moments_full);
    L1Result lp = solve_l1_min(sys.A, sys.b);
    ExtractionInfo xinfo;
    Eigen::VectorXd w = extract_sparse(sys, lp.weights, &xinfo);
    diag.condition_number = sys.condition_estimate;
    diag.l1_objective = lp.objective;
    diag.lp_iterations = lp.iterations;
    diag.residual = (sys.A * w - sys.b).cwiseAbs().maxCoeff();
    return w;
  };

  Eigen::VectorXd w;
  try {
    w = attempt(basis_mode);
  } catch (const std::runtime_error& e) {
    if (basis_mode == BasisMode::DataOrthonormal) {
      // A signed or thin cloud can have an indefinite empirical Gram
      // matrix; the standardized Hermite basis is always available.
      diag.fallbacks.push_back(std::string("hermite_retry: ") + e.what());
      w = attempt(BasisMode::Hermite);
    } else {
      // Retry with the data-orthonormal basis when a fixed basis fails;
      // needs moments up to 2N.
      if (moments.index_set.max_degree() < 2 * N) throw;
      diag.fallbacks.push_back(std::string("data_orthonormal_retry: ") + e.what());
      w = attempt(BasisMode::DataOrthonormal);
    }
  }

  std::vector<int> support;
  for (int k = 0; k < w.size(); ++k)
    if (w[k] != 0.0) support.push_back(k);

  QuadratureRule rule;
  rule.nodes.resize(static_cast<int>(support.size()), d);
  rule.weights.resize(static_cast<int>(support.size()));
  for (size_t i = 0; i < support.size(); ++i) {
    // weights are unchanged by the affine node map
    rule.nodes.row(static_cast<int>(i)) = cloud.states.row(support[i]);
    rule.weights[static_cast<int>(i)] = w[support[i]];
  }
  diag.node_count = rule.size();
  return {rule, diag};
}

}  // namespace dsgc
