#pragma once

#include <Eigen/Dense>

namespace dsgc {

struct L1Result {
  Eigen::VectorXd weights;  // signed, length Q
  double objective = 0.0;   // l1 norm at the optimum
  double residual = 0.0;    // max |A w - b|
  int iterations = 0;
};

/// min ||w||_1 subject to A w = b, solved as the split LP
///   min 1'(p + q)  s.t.  A p - A q = b,  p, q >= 0
/// by a revised two-phase simplex with Bland's rule. Vertex solutions
/// carry at most rank(A) nonzeros. Throws on infeasibility or when the
/// iteration cap 50 * (rows + 2*cols) is hit.
L1Result solve_l1_min(const Eigen::MatrixXd& A, const Eigen::VectorXd& b);

}  // namespace dsgc
