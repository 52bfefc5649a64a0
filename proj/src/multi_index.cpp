#include "dsgc/multi_index.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace dsgc {

int total_degree(const MultiIndex& alpha) {
  int s = 0;
  for (int a : alpha) s += a;
  return s;
}

std::int64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

bool graded_lex_less(const MultiIndex& a, const MultiIndex& b) {
  int da = total_degree(a), db = total_degree(b);
  if (da != db) return da < db;
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

namespace {

// Enumerate all alpha with |alpha| = deg in lex order.
void enumerate_degree(int d, int deg, MultiIndex& work, int pos, int remaining,
                      std::vector<MultiIndex>& out) {
  if (pos == d - 1) {
    work[pos] = remaining;
    out.push_back(work);
    return;
  }
  for (int a = 0; a <= remaining; ++a) {
    work[pos] = a;
    enumerate_degree(d, deg, work, pos + 1, remaining - a, out);
  }
}

}  // namespace

MultiIndexSet::MultiIndexSet(int dimension, int max_degree)
    : dimension_(dimension), max_degree_(max_degree) {
  if (dimension < 1) throw std::invalid_argument("MultiIndexSet: dimension must be >= 1");
  if (max_degree < 0) throw std::invalid_argument("MultiIndexSet: max_degree must be >= 0");

  MultiIndex work(dimension);
  for (int deg = 0; deg <= max_degree; ++deg) {
    enumerate_degree(dimension, deg, work, 0, deg, members_);
  }

  std::map<MultiIndex, int> lookup;
  for (int k = 0; k < size(); ++k) lookup[members_[k]] = k;

  parents_.assign(size(), -1);
  parent_coords_.assign(size(), -1);
  for (int k = 1; k < size(); ++k) {
    MultiIndex alpha = members_[k];
    for (int i = 0; i < dimension; ++i) {
      if (alpha[i] > 0) {
        alpha[i] -= 1;
        parents_[k] = lookup.at(alpha);
        parent_coords_[k] = i;
        break;
      }
    }
  }
}

int MultiIndexSet::find(const MultiIndex& alpha) const {
  auto it = std::lower_bound(members_.begin(), members_.end(), alpha, graded_lex_less);
  if (it == members_.end() || *it != alpha) return -1;
  return static_cast<int>(it - members_.begin());
}

}  // namespace dsgc
