#include "uqkf/pckf.hpp"

#include "uqkf/parallel.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>

namespace uqkf {

QuadratureRule::QuadratureRule(const GermSpec& germ, const std::vector<Index>& active_dims,
                               const std::vector<int>& points)
    : germ_(germ), active_(active_dims) {
  require(points.size() == active_.size(), "one quadrature order per active dimension");
  for (std::size_t k = 0; k < active_.size(); ++k) {
    require(active_[k] >= 0 && active_[k] < germ_dim(), "active dimension out of range");
    rules_.push_back(gauss_rule(germ_[static_cast<std::size_t>(active_[k])], points[k]));
    size_ *= points[k];
  }
}

std::vector<Index> QuadratureRule::unravel(Index i) const {
  std::vector<Index> pos(active_.size());
  for (std::size_t k = active_.size(); k-- > 0;) {
    const Index q = rules_[k].nodes.size();
    pos[k] = i % q;
    i /= q;
  }
  return pos;
}

Vector QuadratureRule::node(Index i) const {
  Vector xi = Vector::Zero(germ_dim());
  const auto pos = unravel(i);
  for (std::size_t k = 0; k < active_.size(); ++k) xi(active_[k]) = rules_[k].nodes(pos[k]);
  return xi;
}

double QuadratureRule::weight(Index i) const {
  const auto pos = unravel(i);
  double w = 1.0;
  for (std::size_t k = 0; k < active_.size(); ++k) w *= rules_[k].weights(pos[k]);
  return w;
}

std::vector<Index> active_dimensions(const PceExpansion& pce) {
  std::vector<Index> active;
  for (Index k = 0; k < static_cast<Index>(pce.germ().size()); ++k) {
    for (Index i = 1; i < pce.size(); ++i) {
      if (pce.index_set()[i][static_cast<std::size_t>(k)] != 0 && pce.coeffs().col(i).squaredNorm() > 0.0) {
        active.push_back(k);
        break;
      }
    }
  }
  return active;
}

PceExpansion nisp_project(const PceExpansion& pce_u, const ForwardModel& forward, std::optional<int> quad_points) {
  require(forward.input_dim() == pce_u.dim(), "forward input dimension differs from expansion dimension");
  const auto& set = pce_u.index_set();
  const auto max_deg = set.max_degrees();
  const auto active = active_dimensions(pce_u);

  std::vector<int> points;
  for (Index k : active) {
    const int needed = max_deg[static_cast<std::size_t>(k)] + 1;
    const int q = quad_points.value_or(needed + 1);
    require(q >= needed, "quadrature order below maximal degree + 1");
    points.push_back(q);
  }
  const QuadratureRule rule(pce_u.germ(), active, points);

  // Only indices supported on active dimensions can have nonzero coefficients.
  std::vector<Index> supported;
  for (Index i = 0; i < set.size(); ++i) {
    bool ok = true;
    for (Index k = 0; k < static_cast<Index>(pce_u.germ().size()); ++k)
      if (set[i][static_cast<std::size_t>(k)] != 0 && std::find(active.begin(), active.end(), k) == active.end())
        ok = false;
    if (ok) supported.push_back(i);
  }

  // 1-D polynomial tables at every node of every active rule.
  std::vector<Matrix> tables;
  for (std::size_t a = 0; a < active.size(); ++a) {
    const auto family = pce_u.germ()[static_cast<std::size_t>(active[a])];
    const int deg = max_deg[static_cast<std::size_t>(active[a])];
    Matrix t(deg + 1, rule.rules()[a].nodes.size());
    for (Index q = 0; q < t.cols(); ++q) t.col(q) = orthonormal_values(family, deg, rule.rules()[a].nodes(q));
    tables.push_back(std::move(t));
  }

  const Index n_nodes = rule.size();
  Matrix basis(static_cast<Index>(supported.size()), n_nodes);
  Matrix values(forward.output_dim(), n_nodes);
  std::vector<std::optional<std::string>> failures(static_cast<std::size_t>(n_nodes));
  parallel_for(static_cast<std::size_t>(n_nodes), [&](std::size_t node) {
    const auto pos = rule.unravel(static_cast<Index>(node));
    for (std::size_t s = 0; s < supported.size(); ++s) {
      const auto& alpha = set[supported[s]];
      double p = 1.0;
      for (std::size_t a = 0; a < active.size(); ++a)
        p *= tables[a](alpha[static_cast<std::size_t>(active[a])], pos[a]);
      basis(static_cast<Index>(s), static_cast<Index>(node)) = p;
    }
    // U_J at the node: only supported indices carry coefficients on active dims.
    Vector u = Vector::Zero(pce_u.dim());
    for (std::size_t s = 0; s < supported.size(); ++s)
      u += pce_u.coeffs().col(supported[s]) * basis(static_cast<Index>(s), static_cast<Index>(node));
    try {
      values.col(static_cast<Index>(node)) = forward(u);
    } catch (const std::exception& e) {
      std::ostringstream os;
      os << "forward model failed at quadrature node xi = (" << rule.node(static_cast<Index>(node)).transpose()
         << "): " << e.what();
      failures[node] = os.str();
    }
  });
  for (std::size_t node = 0; node < failures.size(); ++node)
    if (failures[node]) throw ForwardModelError(*failures[node], static_cast<std::ptrdiff_t>(node));

  Vector weights(n_nodes);
  for (Index q = 0; q < n_nodes; ++q) weights(q) = rule.weight(q);
  const Matrix projected = values * weights.asDiagonal() * basis.transpose();
  Matrix coeffs = Matrix::Zero(forward.output_dim(), set.size());
  for (std::size_t s = 0; s < supported.size(); ++s) coeffs.col(supported[s]) = projected.col(static_cast<Index>(s));
  return PceExpansion(pce_u.germ(), set, std::move(coeffs));
}

PckfAnalysis pckf_update(const PceExpansion& pce_u, const PceExpansion& pce_z, const Vector& z) {
  require(pce_u.index_set() == pce_z.index_set() && pce_u.germ() == pce_z.germ(),
          "pckf_update needs U and Z expansions on one germ and index set");
  require(z.size() == pce_z.dim(), "data dimension differs from Z expansion dimension");
  const Matrix cuz = pce_cross_covariance(pce_u, pce_z);
  const Matrix czz = pce_moments(pce_z).cov;
  auto gain = kalman_gain(cuz, czz);
  Matrix coeffs = pce_u.coeffs() - gain.K * pce_z.coeffs();
  coeffs.col(0) += gain.K * z;
  return {PceExpansion(pce_u.germ(), pce_u.index_set(), std::move(coeffs)), std::move(gain)};
}

std::pair<PceExpansion, PceExpansion> joint_prior_expansions(const ProductPrior& prior, const Matrix& noise_cov,
                                                              const MultiIndexSet& u_index_set) {
  require(u_index_set.n_vars() == prior.dim(), "U index set must be over the prior's variables");
  const Index d = noise_cov.rows();
  const GermSpec germ = concat(germ_for(prior), GermSpec(static_cast<std::size_t>(d), GermFamily::Hermite));
  const Index total = static_cast<Index>(germ.size());
  const auto set = merge(embed(u_index_set, total, 0), total_degree_index_set(total, 1));
  return {pce_from_prior(prior, germ, 0, set), pce_from_gaussian(noise_cov, germ, prior.dim(), set)};
}

PceExpansion pckf_forecast(const PceExpansion& pce_u, const PceExpansion& pce_eps, const ForwardModel& forward,
                           std::optional<int> quad_points) {
  return nisp_project(pce_u, forward, quad_points) + pce_eps;
}

}  // namespace uqkf
