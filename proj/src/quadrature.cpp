#include "dsgc/quadrature.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace dsgc {

namespace {

// Jacobi matrix off-diagonals for the monic orthogonal polynomials of
// the family's probability measure. Diagonals are zero (symmetric
// measures).
//   probabilists' Hermite: beta_n = n
//   Legendre on [-1,1]:    beta_n = n^2 / (4n^2 - 1)
double jacobi_beta(RuleFamily family, int n) {
  switch (family) {
    case RuleFamily::GaussHermite:
      return static_cast<double>(n);
    case RuleFamily::GaussLegendre:
      return static_cast<double>(n) * n / (4.0 * n * n - 1.0);
  }
  throw std::logic_error("unknown rule family");
}

}  // namespace

Rule1D gauss_rule_1d(RuleFamily family, int order) {
  if (order < 1) throw std::invalid_argument("gauss_rule_1d: order must be >= 1");

  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(order, order);
  for (int n = 1; n < order; ++n) {
    double b = std::sqrt(jacobi_beta(family, n));
    jacobi(n, n - 1) = b;
    jacobi(n - 1, n) = b;
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(jacobi);
  if (eig.info() != Eigen::Success)
    throw std::runtime_error("gauss_rule_1d: eigensolver failed");

  Rule1D rule;
  rule.family = family;
  rule.nodes = eig.eigenvalues();
  rule.weights = eig.eigenvectors().row(0).transpose().array().square();
  // Total mass 1 for both families (probability normalization).
  rule.weights /= rule.weights.sum();
  return rule;
}

QuadratureRule tensor_rule(const std::vector<Rule1D>& rules) {
  if (rules.empty()) throw std::invalid_argument("tensor_rule: empty rule list");
  const int d = static_cast<int>(rules.size());
  int count = 1;
  for (const auto& r : rules) count *= r.order();

  QuadratureRule out;
  out.nodes.resize(count, d);
  out.weights.resize(count);

  std::vector<int> idx(d, 0);
  for (int p = 0; p < count; ++p) {
    double w = 1.0;
    for (int i = 0; i < d; ++i) {
      out.nodes(p, i) = rules[i].nodes[idx[i]];
      w *= rules[i].weights[idx[i]];
    }
    out.weights[p] = w;
    for (int i = d - 1; i >= 0; --i) {
      if (++idx[i] < rules[i].order()) break;
      idx[i] = 0;
    }
  }
  return out;
}

namespace {

constexpr double kMergeTol = 1e-12;

struct NodeLess {
  bool operator()(const std::vector<double>& a, const std::vector<double>& b) const {
    for (size_t i = 0; i < a.size(); ++i) {
      if (a[i] < b[i] - kMergeTol) return true;
      if (a[i] > b[i] + kMergeTol) return false;
    }
    return false;
  }
};

// Enumerate all alpha >= 1 componentwise with |alpha| = total, appending
// tensor rules into the accumulator with the given coefficient.
void accumulate_level(const std::vector<Rule1D>& cache,
                      int d, int total, double coeff,
                      std::map<std::vector<double>, double, NodeLess>& acc) {
  std::vector<int> alpha(d, 1);
  int excess = total - d;
  // distribute `excess` over d slots
  std::vector<int> extra(d, 0);
  // iterative composition enumeration
  std::function<void(int, int)> rec = [&](int pos, int rem) {
    if (pos == d - 1) {
      extra[pos] = rem;
      std::vector<Rule1D> rules(d);
      for (int i = 0; i < d; ++i) rules[i] = cache[alpha[i] + extra[i] - 1];
      QuadratureRule t = tensor_rule(rules);
      std::vector<double> key(d);
      for (int p = 0; p < t.size(); ++p) {
        for (int i = 0; i < d; ++i) key[i] = t.nodes(p, i);
        acc[key] += coeff * t.weights[p];
      }
      return;
    }
    for (int a = 0; a <= rem; ++a) {
      extra[pos] = a;
      rec(pos + 1, rem - a);
    }
  };
  rec(0, excess);
}

}  // namespace

QuadratureRule smolyak_rule(RuleFamily family, int dimension, int level) {
  if (dimension < 1) throw std::invalid_argument("smolyak_rule: dimension must be >= 1");
  if (level < 1) throw std::invalid_argument("smolyak_rule: level must be >= 1");

  const int d = dimension;
  // 1D rules of order 1..level+d-1, shared across constituent grids so
  // that coinciding nodes are bitwise equal before merging.
  std::vector<Rule1D> cache;
  for (int q = 1; q <= level + d - 1; ++q) cache.push_back(gauss_rule_1d(family, q));

  std::map<std::vector<double>, double, NodeLess> acc;
  for (int total = std::max(level, d); total <= level + d - 1; ++total) {
    double coeff = ((level + d - total - 1) % 2 == 0 ? 1.0 : -1.0) *
                   static_cast<double>(binomial(d - 1, total - level));
    accumulate_level(cache, d, total, coeff, acc);
  }

  QuadratureRule out;
  out.nodes.resize(static_cast<int>(acc.size()), d);
  out.weights.resize(static_cast<int>(acc.size()));
  int p = 0;
  for (const auto& [node, w] : acc) {
    for (int i = 0; i < d; ++i) out.nodes(p, i) = node[i];
    out.weights[p] = w;
    ++p;
  }
  return out;
}

double integrate(const QuadratureRule& rule,
                 const std::function<double(const Eigen::VectorXd&)>& f) {
  double sum = 0.0;
  for (int p = 0; p < rule.size(); ++p) {
    double v = f(rule.nodes.row(p).transpose());
    if (!std::isfinite(v))
      throw std::runtime_error("integrate: non-finite integrand value at node " +
                               std::to_string(p));
    sum += rule.weights[p] * v;
  }
  return sum;
}

}  // namespace dsgc
