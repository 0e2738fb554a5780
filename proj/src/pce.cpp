#include "uqkf/pce.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <cmath>

namespace uqkf {

GermSpec germ_for(const ProductPrior& prior) {
  GermSpec germ;
  for (const auto& m : prior.marginals())
    germ.push_back(m.is_gaussian() ? GermFamily::Hermite : GermFamily::Legendre);
  return germ;
}

GermSpec concat(const GermSpec& a, const GermSpec& b) {
  GermSpec out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

PceExpansion::PceExpansion(GermSpec germ, MultiIndexSet index_set, Matrix coeffs)
    : germ_(std::move(germ)), index_set_(std::move(index_set)), coeffs_(std::move(coeffs)) {
  require(static_cast<Index>(germ_.size()) == index_set_.n_vars(),
          "germ dimension differs from index-set variables");
  require(coeffs_.cols() == index_set_.size(), "coefficient count differs from index-set size");
  require(coeffs_.rows() >= 1, "expansion needs output dimension >= 1");
}

Vector PceExpansion::basis_values(const Vector& xi) const {
  require(xi.size() == static_cast<Index>(germ_.size()), "germ point has wrong dimension");
  const auto max_deg = index_set_.max_degrees();
  std::vector<Vector> tables;
  tables.reserve(germ_.size());
  for (std::size_t k = 0; k < germ_.size(); ++k)
    tables.push_back(orthonormal_values(germ_[k], max_deg[k], xi(static_cast<Index>(k))));
  Vector p(size());
  for (Index i = 0; i < size(); ++i) {
    double v = 1.0;
    const auto& alpha = index_set_[i];
    for (std::size_t k = 0; k < alpha.size(); ++k)
      if (alpha[k] != 0) v *= tables[k](alpha[k]);
    p(i) = v;
  }
  return p;
}

Vector PceExpansion::evaluate(const Vector& xi) const { return coeffs_ * basis_values(xi); }

namespace {

Index unit_position(const MultiIndexSet& set, Index var) {
  MultiIndex e(static_cast<std::size_t>(set.n_vars()), 0);
  e[static_cast<std::size_t>(var)] = 1;
  const Index pos = set.find(e);
  require(pos >= 0, "index set lacks the first-order index of a germ dimension");
  return pos;
}

}  // namespace

PceExpansion pce_from_prior(const ProductPrior& prior, const GermSpec& germ, Index germ_offset,
                            const MultiIndexSet& index_set) {
  require(germ_offset >= 0 && germ_offset + prior.dim() <= static_cast<Index>(germ.size()),
          "germ offset out of range");
  Matrix coeffs = Matrix::Zero(prior.dim(), index_set.size());
  for (Index k = 0; k < prior.dim(); ++k) {
    const auto& m = prior[k];
    const auto family = germ[static_cast<std::size_t>(germ_offset + k)];
    const Index pos = unit_position(index_set, germ_offset + k);
    coeffs(k, 0) = m.mean();
    if (m.is_gaussian()) {
      require(family == GermFamily::Hermite, "Gaussian marginal needs a Hermite germ");
      coeffs(k, pos) = std::sqrt(m.gaussian().variance);
    } else {
      require(family == GermFamily::Legendre, "uniform marginal needs a Legendre germ");
      // L_1(xi) = sqrt(3) xi, so u = mid + half_width * xi.
      coeffs(k, pos) = (m.uniform().upper - m.uniform().lower) / (2.0 * std::sqrt(3.0));
    }
  }
  return PceExpansion(germ, index_set, std::move(coeffs));
}

PceExpansion pce_from_prior(const ProductPrior& prior) {
  return pce_from_prior(prior, germ_for(prior), 0, total_degree_index_set(prior.dim(), 1));
}

PceExpansion pce_from_gaussian(const Matrix& covariance, const GermSpec& germ, Index germ_offset,
                               const MultiIndexSet& index_set) {
  const Index d = covariance.rows();
  require(covariance.cols() == d, "covariance must be square");
  require(germ_offset >= 0 && germ_offset + d <= static_cast<Index>(germ.size()),
          "germ offset out of range");
  Matrix factor;
  Eigen::LLT<Matrix> llt(covariance);
  if (llt.info() == Eigen::Success) {
    factor = llt.matrixL();
  } else {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(covariance);
    require(eig.eigenvalues().minCoeff() >= -1e-12 * std::max(1.0, eig.eigenvalues().maxCoeff()),
            "covariance is not positive semidefinite");
    factor = eig.eigenvectors() * eig.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal();
  }
  Matrix coeffs = Matrix::Zero(d, index_set.size());
  for (Index k = 0; k < d; ++k) {
    require(germ[static_cast<std::size_t>(germ_offset + k)] == GermFamily::Hermite,
            "Gaussian noise needs Hermite germ dimensions");
    coeffs.col(unit_position(index_set, germ_offset + k)) = factor.col(k);
  }
  return PceExpansion(germ, index_set, std::move(coeffs));
}

PceMoments pce_moments(const PceExpansion& pce) {
  const auto tail = pce.coeffs().rightCols(pce.size() - 1);
  return {pce.mean(), tail * tail.transpose()};
}

Matrix pce_cross_covariance(const PceExpansion& u, const PceExpansion& z) {
  require(u.index_set() == z.index_set() && u.germ() == z.germ(),
          "cross covariance needs expansions on one germ and index set");
  const Index n = u.size() - 1;
  return u.coeffs().rightCols(n) * z.coeffs().rightCols(n).transpose();
}

PceExpansion operator+(const PceExpansion& a, const PceExpansion& b) {
  require(a.index_set() == b.index_set() && a.germ() == b.germ() && a.dim() == b.dim(),
          "sum needs expansions on one germ, index set and output dimension");
  return PceExpansion(a.germ(), a.index_set(), a.coeffs() + b.coeffs());
}

PceExpansion embed(const PceExpansion& pce, const MultiIndexSet& superset) {
  require(superset.contains(pce.index_set()), "embed target is not a superset");
  Matrix coeffs = Matrix::Zero(pce.dim(), superset.size());
  for (Index i = 0; i < pce.size(); ++i) coeffs.col(superset.find(pce.index_set()[i])) = pce.coeffs().col(i);
  return PceExpansion(pce.germ(), superset, std::move(coeffs));
}

double l2_distance(const PceExpansion& a, const PceExpansion& b) {
  require(a.germ() == b.germ() && a.dim() == b.dim(), "l2_distance needs a common germ");
  if (a.index_set().contains(b.index_set())) return (a.coeffs() - embed(b, a.index_set()).coeffs()).norm();
  if (b.index_set().contains(a.index_set())) return (embed(a, b.index_set()).coeffs() - b.coeffs()).norm();
  return (embed(a, merge(a.index_set(), b.index_set())).coeffs() -
          embed(b, merge(a.index_set(), b.index_set())).coeffs())
      .norm();
}

}  // namespace uqkf
