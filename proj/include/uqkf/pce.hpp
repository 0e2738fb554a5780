#pragma once

#include "uqkf/marginal.hpp"
#include "uqkf/multi_index.hpp"
#include "uqkf/orthopoly.hpp"
#include "uqkf/types.hpp"

#include <vector>

namespace uqkf {

/// Per-dimension germ families of a product germ.
using GermSpec = std::vector<GermFamily>;

/// Germ matching a prior factor by factor (Hermite for Gaussian marginals,
/// Legendre for uniform ones).
GermSpec germ_for(const ProductPrior& prior);
GermSpec concat(const GermSpec& a, const GermSpec& b);

/// Truncated polynomial chaos expansion sum_alpha u_alpha P_alpha(xi) of an
/// R^n-valued random variable. Column i of coeffs belongs to index_set[i].
class PceExpansion {
 public:
  PceExpansion(GermSpec germ, MultiIndexSet index_set, Matrix coeffs);

  const GermSpec& germ() const { return germ_; }
  const MultiIndexSet& index_set() const { return index_set_; }
  const Matrix& coeffs() const { return coeffs_; }
  Index dim() const { return coeffs_.rows(); }
  Index size() const { return coeffs_.cols(); }

  Vector mean() const { return coeffs_.col(0); }
  /// P_alpha(xi) for every alpha in the index set.
  Vector basis_values(const Vector& xi) const;
  Vector evaluate(const Vector& xi) const;

 private:
  GermSpec germ_;
  MultiIndexSet index_set_;
  Matrix coeffs_;
};

/// Exact degree-1 representation of a product prior on germ dimensions
/// [germ_offset, germ_offset + n). germ must have the matching family in
/// those slots and index_set must contain the unit indices there.
PceExpansion pce_from_prior(const ProductPrior& prior, const GermSpec& germ, Index germ_offset,
                            const MultiIndexSet& index_set);

/// Degree-1 expansion of the prior over its own germ.
PceExpansion pce_from_prior(const ProductPrior& prior);

/// Centered Gaussian N(0, covariance) driven by Hermite germ dimensions
/// [germ_offset, germ_offset + d) via a Cholesky factor.
PceExpansion pce_from_gaussian(const Matrix& covariance, const GermSpec& germ, Index germ_offset,
                               const MultiIndexSet& index_set);

struct PceMoments {
  Vector mean;
  Matrix cov;
};

/// Exact moments by orthonormality: mean = u_0, cov = sum_{alpha != 0} u_alpha u_alpha^T.
PceMoments pce_moments(const PceExpansion& pce);

/// Cov(U, Z) = sum_{alpha != 0} u_alpha z_alpha^T for expansions on one index set.
Matrix pce_cross_covariance(const PceExpansion& u, const PceExpansion& z);

PceExpansion operator+(const PceExpansion& a, const PceExpansion& b);

/// Zero-pads pce onto a superset of its index set.
PceExpansion embed(const PceExpansion& pce, const MultiIndexSet& superset);

/// L2(Omega) distance; expansions on nested sets are zero-padded first.
double l2_distance(const PceExpansion& a, const PceExpansion& b);

}  // namespace uqkf
