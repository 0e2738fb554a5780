#pragma once

#include "uqkf/types.hpp"

#include <cstddef>
#include <map>
#include <vector>

namespace uqkf {

/// Exponent tuple over a fixed number of germ variables.
using MultiIndex = std::vector<int>;

int total_degree(const MultiIndex& alpha);

/// Graded order: total degree ascending, then exponents lexicographically
/// descending, so (1,0) precedes (0,1).
bool graded_less(const MultiIndex& a, const MultiIndex& b);

/// Ordered, duplicate-free multi-index set with the zero index at position 0.
class MultiIndexSet {
 public:
  MultiIndexSet(Index n_vars, std::vector<MultiIndex> indices);

  Index n_vars() const { return n_vars_; }
  Index size() const { return static_cast<Index>(indices_.size()); }
  const MultiIndex& operator[](Index i) const { return indices_[static_cast<std::size_t>(i)]; }
  const std::vector<MultiIndex>& indices() const { return indices_; }

  /// Position of alpha, or -1 when absent.
  Index find(const MultiIndex& alpha) const;
  bool contains(const MultiIndexSet& other) const;
  /// Largest exponent per variable.
  std::vector<int> max_degrees() const;
  int max_total_degree() const;

  friend bool operator==(const MultiIndexSet& a, const MultiIndexSet& b) {
    return a.n_vars_ == b.n_vars_ && a.indices_ == b.indices_;
  }

 private:
  Index n_vars_;
  std::vector<MultiIndex> indices_;
  std::map<MultiIndex, Index> lookup_;
};

/// All multi-indices over n_vars with total degree <= degree.
MultiIndexSet total_degree_index_set(Index n_vars, int degree);

/// Total-degree set with an extra tail k*e_axis for k <= tail_degree.
MultiIndexSet axis_tail_index_set(Index n_vars, int base_degree, Index axis, int tail_degree);

/// Tensor set {alpha : alpha_k <= max_per_var[k]}.
MultiIndexSet tensor_index_set(const std::vector<int>& max_per_var);

MultiIndexSet merge(const MultiIndexSet& a, const MultiIndexSet& b);

/// Places a set over n_vars variables into a larger germ starting at offset.
MultiIndexSet embed(const MultiIndexSet& set, Index total_vars, Index offset);

}  // namespace uqkf
