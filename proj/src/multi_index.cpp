#include "uqkf/multi_index.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace uqkf {

int total_degree(const MultiIndex& alpha) { return std::accumulate(alpha.begin(), alpha.end(), 0); }

bool graded_less(const MultiIndex& a, const MultiIndex& b) {
  const int da = total_degree(a), db = total_degree(b);
  if (da != db) return da < db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

MultiIndexSet::MultiIndexSet(Index n_vars, std::vector<MultiIndex> indices)
    : n_vars_(n_vars), indices_(std::move(indices)) {
  require(n_vars_ >= 1, "multi-index set needs n_vars >= 1");
  for (const auto& a : indices_) {
    require(static_cast<Index>(a.size()) == n_vars_, "multi-index length differs from n_vars");
    require(std::all_of(a.begin(), a.end(), [](int e) { return e >= 0; }),
            "multi-index exponents must be nonnegative");
  }
  std::sort(indices_.begin(), indices_.end(), graded_less);
  indices_.erase(std::unique(indices_.begin(), indices_.end()), indices_.end());
  require(!indices_.empty() && total_degree(indices_.front()) == 0,
          "multi-index set must contain the zero index");
  for (std::size_t i = 0; i < indices_.size(); ++i) lookup_.emplace(indices_[i], static_cast<Index>(i));
}

Index MultiIndexSet::find(const MultiIndex& alpha) const {
  const auto it = lookup_.find(alpha);
  return it == lookup_.end() ? -1 : it->second;
}

bool MultiIndexSet::contains(const MultiIndexSet& other) const {
  if (other.n_vars_ != n_vars_) return false;
  return std::all_of(other.indices_.begin(), other.indices_.end(),
                     [&](const MultiIndex& a) { return find(a) >= 0; });
}

std::vector<int> MultiIndexSet::max_degrees() const {
  std::vector<int> m(static_cast<std::size_t>(n_vars_), 0);
  for (const auto& a : indices_)
    for (std::size_t k = 0; k < a.size(); ++k) m[k] = std::max(m[k], a[k]);
  return m;
}

int MultiIndexSet::max_total_degree() const {
  int d = 0;
  for (const auto& a : indices_) d = std::max(d, total_degree(a));
  return d;
}

MultiIndexSet total_degree_index_set(Index n_vars, int degree) {
  require(n_vars >= 1 && degree >= 0, "total_degree_index_set needs n_vars >= 1, degree >= 0");
  std::vector<MultiIndex> out;
  MultiIndex alpha(static_cast<std::size_t>(n_vars), 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t k, int remaining) {
    if (k == alpha.size()) {
      out.push_back(alpha);
      return;
    }
    for (int e = 0; e <= remaining; ++e) {
      alpha[k] = e;
      rec(k + 1, remaining - e);
    }
    alpha[k] = 0;
  };
  rec(0, degree);
  return MultiIndexSet(n_vars, std::move(out));
}

MultiIndexSet axis_tail_index_set(Index n_vars, int base_degree, Index axis, int tail_degree) {
  require(axis >= 0 && axis < n_vars, "axis out of range");
  auto base = total_degree_index_set(n_vars, base_degree);
  std::vector<MultiIndex> out = base.indices();
  for (int k = 1; k <= tail_degree; ++k) {
    MultiIndex a(static_cast<std::size_t>(n_vars), 0);
    a[static_cast<std::size_t>(axis)] = k;
    out.push_back(a);
  }
  return MultiIndexSet(n_vars, std::move(out));
}

MultiIndexSet tensor_index_set(const std::vector<int>& max_per_var) {
  require(!max_per_var.empty(), "tensor_index_set needs at least one variable");
  std::vector<MultiIndex> out;
  MultiIndex alpha(max_per_var.size(), 0);
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == alpha.size()) {
      out.push_back(alpha);
      return;
    }
    for (int e = 0; e <= max_per_var[k]; ++e) {
      alpha[k] = e;
      rec(k + 1);
    }
    alpha[k] = 0;
  };
  rec(0);
  return MultiIndexSet(static_cast<Index>(max_per_var.size()), std::move(out));
}

MultiIndexSet merge(const MultiIndexSet& a, const MultiIndexSet& b) {
  require(a.n_vars() == b.n_vars(), "merge needs equal n_vars");
  std::vector<MultiIndex> all = a.indices();
  all.insert(all.end(), b.indices().begin(), b.indices().end());
  return MultiIndexSet(a.n_vars(), std::move(all));
}

MultiIndexSet embed(const MultiIndexSet& set, Index total_vars, Index offset) {
  require(offset >= 0 && offset + set.n_vars() <= total_vars, "embed: germ range out of bounds");
  std::vector<MultiIndex> out;
  out.reserve(static_cast<std::size_t>(set.size()));
  for (const auto& a : set.indices()) {
    MultiIndex b(static_cast<std::size_t>(total_vars), 0);
    std::copy(a.begin(), a.end(), b.begin() + offset);
    out.push_back(std::move(b));
  }
  return MultiIndexSet(total_vars, std::move(out));
}

}  // namespace uqkf
