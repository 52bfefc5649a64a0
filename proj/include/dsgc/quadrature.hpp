#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "dsgc/multi_index.hpp"

namespace dsgc {

enum class RuleFamily {
  GaussHermite,  // weight exp(-x^2/2)/sqrt(2*pi), standard normal
  GaussLegendre  // uniform probability measure on [-1,1]
};

/// One-dimensional Gauss rule; weights sum to 1 (probability measure).
struct Rule1D {
  RuleFamily family;
  Eigen::VectorXd nodes;    // strictly increasing
  Eigen::VectorXd weights;  // positive, sum 1

  int order() const { return static_cast<int>(nodes.size()); }
};

/// Discrete measure in d dimensions; weights may be signed.
struct QuadratureRule {
  Eigen::MatrixXd nodes;    // Q x d, one node per row
  Eigen::VectorXd weights;  // Q entries

  int size() const { return static_cast<int>(nodes.rows()); }
  int dimension() const { return static_cast<int>(nodes.cols()); }
};

/// Golub-Welsch rule of the given order; exact up to degree 2Q-1.
Rule1D gauss_rule_1d(RuleFamily family, int order);

/// Full Cartesian product of 1D rules; weights multiply.
QuadratureRule tensor_rule(const std::vector<Rule1D>& rules);

/// Isotropic Smolyak sparse rule in `dimension` variables at `level`;
/// exact for total degree <= 2*level - 1. Duplicate nodes across the
/// constituent tensor rules are merged (coordinates match within 1e-12).
QuadratureRule smolyak_rule(RuleFamily family, int dimension, int level);

/// Sum of w_p * f(node_p); throws on non-finite f values.
double integrate(const QuadratureRule& rule,
                 const std::function<double(const Eigen::VectorXd&)>& f);

}  // namespace dsgc
