#pragma once

#include "uqkf/forward_model.hpp"
#include "uqkf/moments.hpp"
#include "uqkf/pce.hpp"
#include "uqkf/types.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace uqkf {

/// Tensor Gauss rule over the active germ dimensions; inactive dimensions
/// are pinned at 0 in every node.
class QuadratureRule {
 public:
  QuadratureRule(const GermSpec& germ, const std::vector<Index>& active_dims, const std::vector<int>& points);

  Index size() const { return size_; }
  Index germ_dim() const { return static_cast<Index>(germ_.size()); }
  const std::vector<Index>& active_dims() const { return active_; }
  const std::vector<GaussRule>& rules() const { return rules_; }
  /// Per-active-dimension node positions of node i.
  std::vector<Index> unravel(Index i) const;
  Vector node(Index i) const;
  double weight(Index i) const;

 private:
  GermSpec germ_;
  std::vector<Index> active_;
  std::vector<GaussRule> rules_;
  Index size_ = 1;
};

/// Germ dimensions on which the expansion actually depends.
std::vector<Index> active_dimensions(const PceExpansion& pce);

/// Coefficients g_alpha = sum_q w_q G(U_J(xi_q)) P_alpha(xi_q) of G(U_J) on
/// U_J's index set. quad_points gives the 1-D order for every active germ
/// dimension; by default each uses its maximal index degree + 2.
PceExpansion nisp_project(const PceExpansion& pce_u, const ForwardModel& forward,
                          std::optional<int> quad_points = std::nullopt);

struct PckfAnalysis {
  PceExpansion analysis;
  GainMatrix<double> gain;
};

/// Coefficient update u_alpha + K_J (delta_{alpha 0} z - z_alpha) with
/// K_J = Cov(U_J, Z_J) Cov(Z_J)^{-1} from exact expansion moments.
PckfAnalysis pckf_update(const PceExpansion& pce_u, const PceExpansion& pce_z, const Vector& z);

/// Expansions of U and eps on a joint germ: the prior's germ first, then d
/// Hermite dimensions for the noise. u_index_set is over the prior's
/// variables; first-order noise indices are added.
std::pair<PceExpansion, PceExpansion> joint_prior_expansions(const ProductPrior& prior, const Matrix& noise_cov,
                                                              const MultiIndexSet& u_index_set);

/// Z_J = Proj_J G(U_J) + eps.
PceExpansion pckf_forecast(const PceExpansion& pce_u, const PceExpansion& pce_eps, const ForwardModel& forward,
                           std::optional<int> quad_points = std::nullopt);

}  // namespace uqkf
