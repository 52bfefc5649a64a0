#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "dsgc/lp.hpp"
#include "dsgc/moments.hpp"
#include "dsgc/propagate.hpp"
#include "dsgc/quadrature.hpp"

namespace dsgc {

enum class BasisMode { Monomial, Hermite, DataOrthonormal };

/// Exactness constraints A w = b: row k is T_k evaluated at every
/// candidate node, b_k the exact moment of T_k.
struct ConstraintSystem {
  Eigen::MatrixXd A;  // M x Q
  Eigen::VectorXd b;
  PolynomialBasis basis;
  double condition_estimate = 0.0;
};

/// Assemble constraints from candidate nodes (rows of `nodes`) and the
/// moments of the underlying measure. The basis degree fixes M; moments
/// must cover that degree.
ConstraintSystem assemble(const Eigen::MatrixXd& nodes, const PolynomialBasis& basis,
                          const MomentVector& moments);

struct ExtractionInfo {
  int iterations = 0;
  bool null_space_exhausted = false;  // stopped early: no usable null vector
  bool sign_flip_used = false;        // no sign-mismatched entry on first try
};

/// Null-space weight elimination: repeatedly add a kernel vector of the
/// active-column submatrix to w, zeroing at least one entry per pass,
/// until at most M nonzeros survive. Exactness ||Aw - b|| is preserved;
/// surviving weights may be negative.
Eigen::VectorXd extract_sparse(const ConstraintSystem& sys, Eigen::VectorXd w,
                               ExtractionInfo* info = nullptr);

struct RuleDiagnostics {
  double condition_number = 0.0;
  double l1_objective = 0.0;
  double residual = 0.0;
  int node_count = 0;
  int lp_iterations = 0;
  std::vector<std::string> fallbacks;
};

/// Full synthesis pipeline for one restart: standardize the cloud's
/// moments, build the requested polynomial basis, solve the L1 program,
/// extract a sparse rule, and map nodes back to original coordinates.
std::pair<QuadratureRule, RuleDiagnostics> build_rule(const ParticleCloud& cloud,
                                                      BasisMode basis_mode,
                                                      int constraint_degree,
                                                      const MomentVector& moments);

}  // namespace dsgc
