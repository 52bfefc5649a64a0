#include "dsgc/lp.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace dsgc {

namespace {

// Column j of the split-form LP: j < Q is +A_j, j in [Q, 2Q) is -A_{j-Q},
// j >= 2Q is a signed artificial unit column.
struct SplitProblem {
  const Eigen::MatrixXd& A;
  Eigen::VectorXd art_sign;  // per-row sign making artificials start at |b|
  int Q;
  int M;

  Eigen::VectorXd column(int j) const {
    if (j < Q) return A.col(j);
    if (j < 2 * Q) return -A.col(j - Q);
    Eigen::VectorXd e = Eigen::VectorXd::Zero(M);
    e[j - 2 * Q] = art_sign[j - 2 * Q];
    return e;
  }
};

}  // namespace

L1Result solve_l1_min(const Eigen::MatrixXd& A, const Eigen::VectorXd& b) {
  const int M = static_cast<int>(A.rows());
  const int Q = static_cast<int>(A.cols());
  if (b.size() != M) throw std::invalid_argument("solve_l1_min: size mismatch");

  const double scale = std::max({1.0, A.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff()});
  const double tol = 1e-11 * scale;

  SplitProblem prob{A, Eigen::VectorXd(M), Q, M};
  for (int i = 0; i < M; ++i) prob.art_sign[i] = (b[i] >= 0.0) ? 1.0 : -1.0;

  std::vector<int> basis(M);
  for (int i = 0; i < M; ++i) basis[i] = 2 * Q + i;

  const long max_iter = 50L * (M + 2 * Q) + 200;
  long iterations = 0;

  auto run_phase = [&](int phase) {
    while (true) {
      if (++iterations > max_iter)
        throw std::runtime_error("solve_l1_min: iteration cap reached (" +
                                 std::to_string(max_iter) + ")");

      Eigen::MatrixXd B(M, M);
      for (int i = 0; i < M; ++i) B.col(i) = prob.column(basis[i]);
      Eigen::PartialPivLU<Eigen::MatrixXd> lu(B);

      Eigen::VectorXd cB(M);
      for (int i = 0; i < M; ++i) {
        if (phase == 1)
          cB[i] = basis[i] >= 2 * Q ? 1.0 : 0.0;
        else
          cB[i] = basis[i] < 2 * Q ? 1.0 : 0.0;
      }
      Eigen::VectorXd y = lu.transpose().solve(cB);

      // Reduced costs of the real columns; Bland's rule on the smallest index.
      Eigen::VectorXd v = A.transpose() * y;
      const double c_real = (phase == 1) ? 0.0 : 1.0;
      int entering = -1;
      double r_tol = 1e-9 * std::max(1.0, y.cwiseAbs().maxCoeff() * scale);
      for (int j = 0; j < 2 * Q; ++j) {
        double r = (j < Q) ? c_real - v[j] : c_real + v[j - Q];
        if (r < -r_tol) {
          bool in_basis = false;
          for (int i = 0; i < M; ++i)
            if (basis[i] == j) {
              in_basis = true;
              break;
            }
          if (!in_basis) {
            entering = j;
            break;
          }
        }
      }
      if (entering < 0) return;  // optimal for this phase

      Eigen::VectorXd dir = lu.solve(prob.column(entering));
      Eigen::VectorXd xB = lu.solve(b);

      int leaving = -1;
      double best_ratio = 0.0;
      for (int i = 0; i < M; ++i) {
        if (dir[i] > tol) {
          double ratio = std::max(xB[i], 0.0) / dir[i];
          if (leaving < 0 || ratio < best_ratio - 1e-15 ||
              (std::abs(ratio - best_ratio) <= 1e-15 && basis[i] < basis[leaving])) {
            leaving = i;
            best_ratio = ratio;
          }
        }
      }
      if (leaving < 0)
        throw std::runtime_error("solve_l1_min: unbounded direction encountered");
      basis[leaving] = entering;
    }
  };

  run_phase(1);

  // Feasibility: artificials must sit at zero.
  {
    Eigen::MatrixXd B(M, M);
    for (int i = 0; i < M; ++i) B.col(i) = prob.column(basis[i]);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(B);
    Eigen::VectorXd xB = lu.solve(b);
    double infeas = 0.0;
    for (int i = 0; i < M; ++i)
      if (basis[i] >= 2 * Q) infeas += std::abs(xB[i]);
    if (infeas > 1e-7 * std::max(1.0, b.cwiseAbs().maxCoeff()))
      throw std::runtime_error("solve_l1_min: constraints infeasible (phase-1 objective " +
                               std::to_string(infeas) + ")");

    // Pivot zero-level artificials out where a real column is available.
    for (int i = 0; i < M; ++i) {
      if (basis[i] < 2 * Q) continue;
      for (int j = 0; j < 2 * Q; ++j) {
        bool in_basis = false;
        for (int k = 0; k < M; ++k)
          if (basis[k] == j) {
            in_basis = true;
            break;
          }
        if (in_basis) continue;
        Eigen::VectorXd dir = lu.solve(prob.column(j));
        if (std::abs(dir[i]) > 1e-7 * scale) {
          basis[i] = j;
          for (int k = 0; k < M; ++k) B.col(k) = prob.column(basis[k]);
          lu.compute(B);
          break;
        }
      }
    }
  }

  run_phase(2);

  Eigen::MatrixXd B(M, M);
  for (int i = 0; i < M; ++i) B.col(i) = prob.column(basis[i]);
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(B);
  Eigen::VectorXd xB = lu.solve(b);

  L1Result result;
  result.weights = Eigen::VectorXd::Zero(Q);
  for (int i = 0; i < M; ++i) {
    if (basis[i] < Q)
      result.weights[basis[i]] += xB[i];
    else if (basis[i] < 2 * Q)
      result.weights[basis[i] - Q] -= xB[i];
  }
  result.objective = result.weights.cwiseAbs().sum();
  result.residual = (A * result.weights - b).cwiseAbs().maxCoeff();
  result.iterations = static_cast<int>(iterations);

  // Optimality certificate: no real column prices out negative.
  {
    Eigen::VectorXd cB(M);
    for (int i = 0; i < M; ++i) cB[i] = basis[i] < 2 * Q ? 1.0 : 0.0;
    Eigen::VectorXd y = lu.transpose().solve(cB);
    Eigen::VectorXd v = A.transpose() * y;
    double cert_tol = 1e-8 * std::max(1.0, y.cwiseAbs().maxCoeff() * scale);
    for (int j = 0; j < Q; ++j) {
      if (1.0 - v[j] < -cert_tol || 1.0 + v[j] < -cert_tol)
        throw std::runtime_error("solve_l1_min: optimality certificate failed");
    }
  }

  if (result.residual > 1e-9 * std::max(1.0, b.cwiseAbs().maxCoeff()))
    throw std::runtime_error("solve_l1_min: residual " + std::to_string(result.residual) +
                             " exceeds feasibility tolerance");
  return result;
}

}  // namespace dsgc
