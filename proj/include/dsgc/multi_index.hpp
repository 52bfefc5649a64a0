#pragma once

#include <cstdint>
#include <vector>

namespace dsgc {

/// Multi-index alpha in N_0^d; |alpha| = sum of entries.
using MultiIndex = std::vector<int>;

int total_degree(const MultiIndex& alpha);

std::int64_t binomial(int n, int k);

/// All multi-indices of dimension d with total degree <= max_degree,
/// enumerated in graded lexicographic order.
///
/// The ordering is a prefix ordering: the first binomial(d+k,d) members
/// form exactly the degree-<=k set, which lets callers restrict a moment
/// vector to a lower degree by truncation.
class MultiIndexSet {
 public:
  MultiIndexSet() = default;
  MultiIndexSet(int dimension, int max_degree);

  int dimension() const { return dimension_; }
  int max_degree() const { return max_degree_; }
  int size() const { return static_cast<int>(members_.size()); }
  const MultiIndex& operator[](int k) const { return members_[k]; }
  const std::vector<MultiIndex>& members() const { return members_; }

  /// Index of alpha in the set, or -1 if absent.
  int find(const MultiIndex& alpha) const;

  /// For k > 0, members_[k] = members_[parent(k)] + e_{parent_coord(k)}.
  /// Enables O(M) evaluation of all monomials at a point by recursion.
  int parent(int k) const { return parents_[k]; }
  int parent_coord(int k) const { return parent_coords_[k]; }

 private:
  int dimension_ = 0;
  int max_degree_ = -1;
  std::vector<MultiIndex> members_;
  std::vector<int> parents_;
  std::vector<int> parent_coords_;
};

/// Graded-lex comparison: first by |alpha|, then lexicographically.
bool graded_lex_less(const MultiIndex& a, const MultiIndex& b);

}  // namespace dsgc
