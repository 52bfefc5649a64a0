#include <doctest.h>

#include <cmath>
#include <random>

#include "dsgc/quadrature.hpp"

using namespace dsgc;

namespace {

// E[x^j] under the standard normal: (j-1)!! for even j, 0 for odd j.
double gaussian_moment(int j) {
  if (j % 2 == 1) return 0.0;
  double v = 1.0;
  for (int k = j - 1; k > 1; k -= 2) v *= k;
  return v;
}

// E[x^j] under the uniform probability measure on [-1, 1].
double uniform_moment(int j) { return (j % 2 == 1) ? 0.0 : 1.0 / (j + 1); }

double exact_moment(RuleFamily family, int j) {
  return family == RuleFamily::GaussHermite ? gaussian_moment(j) : uniform_moment(j);
}

double integrate_monomial(const QuadratureRule& rule, const MultiIndex& alpha) {
  return integrate(rule, [&alpha](const Eigen::VectorXd& x) {
    double v = 1.0;
    for (size_t i = 0; i < alpha.size(); ++i) v *= std::pow(x[i], alpha[i]);
    return v;
  });
}

// Roundoff scale of the quadrature sum: sum |w_i| |x_i^alpha|.
double monomial_mass(const QuadratureRule& rule, const MultiIndex& alpha) {
  double s = 0.0;
  for (int p = 0; p < rule.size(); ++p) {
    double v = std::abs(rule.weights[p]);
    for (size_t i = 0; i < alpha.size(); ++i) v *= std::pow(std::abs(rule.nodes(p, i)), alpha[i]);
    s += v;
  }
  return std::max(1.0, s);
}

}  // namespace

TEST_CASE("multi-index sets: sizes, order, parents") {
  MultiIndexSet s28(2, 8);
  CHECK(s28.size() == 45);
  CHECK(MultiIndexSet(1, 0).size() == 1);
  CHECK(MultiIndexSet(3, 2).size() == 10);
  CHECK(MultiIndexSet(4, 5).size() == binomial(9, 4));

  // strictly increasing in graded-lex order, so no duplicates
  for (int k = 1; k < s28.size(); ++k) CHECK(graded_lex_less(s28[k - 1], s28[k]));

  // degree prefix property
  MultiIndexSet s24(2, 4);
  for (int k = 0; k < s24.size(); ++k) CHECK(s24[k] == s28[k]);

  // find() inverts enumeration; parent chains drop exactly one power
  for (int k = 0; k < s28.size(); ++k) {
    CHECK(s28.find(s28[k]) == k);
    if (k > 0) {
      MultiIndex up = s28[s28.parent(k)];
      up[s28.parent_coord(k)] += 1;
      CHECK(up == s28[k]);
    }
  }
  CHECK(s28.find({9, 0}) == -1);
}

TEST_CASE("1D Gauss rules: frozen low orders") {
  Rule1D h1 = gauss_rule_1d(RuleFamily::GaussHermite, 1);
  CHECK(h1.nodes[0] == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(h1.weights[0] == doctest::Approx(1.0));

  Rule1D h2 = gauss_rule_1d(RuleFamily::GaussHermite, 2);
  CHECK(h2.nodes[0] == doctest::Approx(-1.0));
  CHECK(h2.nodes[1] == doctest::Approx(1.0));
  CHECK(h2.weights[0] == doctest::Approx(0.5));

  // 3-point Hermite: nodes 0, +-sqrt(3), weights 2/3, 1/6
  Rule1D h3 = gauss_rule_1d(RuleFamily::GaussHermite, 3);
  CHECK(h3.nodes[0] == doctest::Approx(-std::sqrt(3.0)));
  CHECK(h3.nodes[1] == doctest::Approx(0.0).epsilon(1e-13));
  CHECK(h3.weights[1] == doctest::Approx(2.0 / 3.0));

  // 2-point Legendre: nodes +-1/sqrt(3)
  Rule1D l2 = gauss_rule_1d(RuleFamily::GaussLegendre, 2);
  CHECK(l2.nodes[1] == doctest::Approx(1.0 / std::sqrt(3.0)));
  CHECK(l2.weights[0] == doctest::Approx(0.5));

  CHECK_THROWS_AS(gauss_rule_1d(RuleFamily::GaussHermite, 0), std::invalid_argument);
}

TEST_CASE("1D Gauss rules: exactness to degree 2Q-1, both families") {
  for (RuleFamily family : {RuleFamily::GaussHermite, RuleFamily::GaussLegendre}) {
    for (int q = 1; q <= 8; ++q) {
      Rule1D r = gauss_rule_1d(family, q);
      CHECK(r.weights.sum() == doctest::Approx(1.0).epsilon(1e-13));
      CHECK(r.weights.minCoeff() > 0.0);
      for (int k = 1; k < q; ++k) CHECK(r.nodes[k] > r.nodes[k - 1]);

      QuadratureRule as_rule{r.nodes, r.weights};
      for (int j = 0; j <= 2 * q - 1; ++j) {
        double got = integrate_monomial(as_rule, {j});
        CHECK(std::abs(got - exact_moment(family, j)) <
              1e-12 * monomial_mass(as_rule, {j}));
      }
      // one degree beyond must fail for Hermite (sanity that the test bites)
      if (family == RuleFamily::GaussHermite && q <= 4) {
        double beyond = integrate_monomial(as_rule, {2 * q});
        CHECK(std::abs(beyond - gaussian_moment(2 * q)) > 1e-6);
      }
    }
  }
}

TEST_CASE("tensor product rules") {
  Rule1D h2 = gauss_rule_1d(RuleFamily::GaussHermite, 2);
  Rule1D h3 = gauss_rule_1d(RuleFamily::GaussHermite, 3);

  QuadratureRule t22 = tensor_rule({h2, h2});
  CHECK(t22.size() == 4);
  CHECK(t22.dimension() == 2);
  CHECK(t22.weights.sum() == doctest::Approx(1.0));
  CHECK(integrate_monomial(t22, {2, 2}) == doctest::Approx(1.0));

  QuadratureRule t23 = tensor_rule({h2, h3});
  CHECK(t23.size() == 6);
  CHECK(integrate_monomial(t23, {2, 4}) == doctest::Approx(3.0));
  CHECK(integrate_monomial(t23, {1, 3}) == doctest::Approx(0.0).scale(1.0));

  // mixed-family product: normal x uniform
  Rule1D l3 = gauss_rule_1d(RuleFamily::GaussLegendre, 3);
  QuadratureRule mixed = tensor_rule({h3, l3});
  CHECK(integrate_monomial(mixed, {4, 2}) == doctest::Approx(3.0 / 3.0));
}

TEST_CASE("Smolyak: level 1 collapses to the origin") {
  for (int dim : {2, 5}) {
    QuadratureRule r = smolyak_rule(RuleFamily::GaussHermite, dim, 1);
    CHECK(r.size() == 1);
    CHECK(r.nodes.row(0).norm() == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(r.weights[0] == doctest::Approx(1.0));
  }
}

TEST_CASE("Smolyak: exactness for total degree <= 2*level - 1") {
  for (RuleFamily family : {RuleFamily::GaussHermite, RuleFamily::GaussLegendre}) {
    for (int dim : {2, 3}) {
      for (int level : {1, 2, 3}) {
        QuadratureRule rule = smolyak_rule(family, dim, level);
        CHECK(rule.weights.sum() == doctest::Approx(1.0).epsilon(1e-12));
        MultiIndexSet set(dim, 2 * level - 1);
        for (int k = 0; k < set.size(); ++k) {
          double exact = 1.0;
          for (int c = 0; c < dim; ++c) exact *= exact_moment(family, set[k][c]);
          CHECK(integrate_monomial(rule, set[k]) ==
                doctest::Approx(exact).epsilon(1e-10).scale(1.0));
        }
      }
    }
  }
}

TEST_CASE("Smolyak: sparser than the full tensor grid") {
  QuadratureRule sparse = smolyak_rule(RuleFamily::GaussHermite, 2, 3);
  CHECK(sparse.size() < 25);  // 5x5 tensor grid with the same exactness

  QuadratureRule sparse4d = smolyak_rule(RuleFamily::GaussHermite, 4, 2);
  CHECK(sparse4d.size() == 9);  // 2*d + 1 cross pattern
  QuadratureRule d64 = smolyak_rule(RuleFamily::GaussHermite, 64, 2);
  CHECK(d64.size() == 129);
}

TEST_CASE("Smolyak matches dense tensor on shared polynomial range") {
  QuadratureRule sparse = smolyak_rule(RuleFamily::GaussHermite, 2, 2);
  Rule1D h4 = gauss_rule_1d(RuleFamily::GaussHermite, 4);
  QuadratureRule dense = tensor_rule({h4, h4});

  std::mt19937 gen(20260823);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  MultiIndexSet set(2, 3);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::VectorXd c(set.size());
    for (int k = 0; k < set.size(); ++k) c[k] = coeff(gen);
    auto poly = [&](const Eigen::VectorXd& x) {
      double v = 0.0;
      for (int k = 0; k < set.size(); ++k)
        v += c[k] * std::pow(x[0], set[k][0]) * std::pow(x[1], set[k][1]);
      return v;
    };
    CHECK(integrate(sparse, poly) ==
          doctest::Approx(integrate(dense, poly)).epsilon(1e-10).scale(1.0));
  }
}

TEST_CASE("integrate: rejects non-finite integrand values") {
  QuadratureRule rule = smolyak_rule(RuleFamily::GaussHermite, 2, 2);
  CHECK_THROWS(integrate(rule, [](const Eigen::VectorXd& x) { return 1.0 / x[0]; }));
}
