#pragma once

#include "uqkf/marginal.hpp"
#include "uqkf/pce.hpp"
#include "uqkf/types.hpp"

#include <cstdint>

namespace uqkf {

/// M samples of an R^n-valued random variable, stored one member per column.
class Ensemble {
 public:
  explicit Ensemble(Matrix members);

  Index dim() const { return members_.rows(); }
  Index size() const { return members_.cols(); }
  const Matrix& members() const { return members_; }
  auto member(Index j) const { return members_.col(j); }

  Vector mean() const { return members_.rowwise().mean(); }
  /// Members minus the ensemble mean.
  Matrix centered() const { return members_.colwise() - mean(); }

 private:
  Matrix members_;
};

/// i.i.d. prior draws; member j uses the stream (seed, Prior, j).
Ensemble sample(const ProductPrior& prior, Index M, std::uint64_t seed);

/// Evaluates the expansion at i.i.d. germ draws; member j uses (seed, Germ, j).
Ensemble sample(const PceExpansion& pce, Index M, std::uint64_t seed);

}  // namespace uqkf
