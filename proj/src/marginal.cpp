#include "uqkf/marginal.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace uqkf {

Marginal1D::Marginal1D(Gaussian g) : kind_(g) {
  require(g.variance >= 0.0 && std::isfinite(g.variance), "Gaussian marginal needs variance >= 0");
}

Marginal1D::Marginal1D(Uniform u) : kind_(u) {
  require(u.lower < u.upper, "Uniform marginal needs lower < upper");
}

double Marginal1D::mean() const {
  if (is_gaussian()) return gaussian().mean;
  return 0.5 * (uniform().lower + uniform().upper);
}

double Marginal1D::variance() const {
  if (is_gaussian()) return gaussian().variance;
  const double w = uniform().upper - uniform().lower;
  return w * w / 12.0;
}

double Marginal1D::log_pdf(double x) const {
  if (is_gaussian()) {
    const auto& g = gaussian();
    const double r = x - g.mean;
    return -0.5 * r * r / g.variance - 0.5 * std::log(2.0 * std::numbers::pi * g.variance);
  }
  const auto& u = uniform();
  if (x < u.lower || x > u.upper) return -std::numeric_limits<double>::infinity();
  return -std::log(u.upper - u.lower);
}

double Marginal1D::pdf(double x) const { return std::exp(log_pdf(x)); }

double Marginal1D::from_germ(double xi) const {
  if (is_gaussian()) return gaussian().mean + std::sqrt(gaussian().variance) * xi;
  const auto& u = uniform();
  return 0.5 * (u.lower + u.upper) + 0.5 * (u.upper - u.lower) * xi;
}

double Marginal1D::draw(CounterRng& rng) const {
  return from_germ(is_gaussian() ? rng.standard_normal() : rng.symmetric_uniform());
}

std::string Marginal1D::describe() const {
  std::ostringstream os;
  os.precision(17);
  if (is_gaussian())
    os << "N(" << gaussian().mean << ", " << gaussian().variance << ")";
  else
    os << "Uni(" << uniform().lower << ", " << uniform().upper << ")";
  return os.str();
}

ProductPrior::ProductPrior(std::vector<Marginal1D> marginals) : marginals_(std::move(marginals)) {
  require(!marginals_.empty(), "ProductPrior needs at least one marginal");
}

Vector ProductPrior::mean() const {
  Vector m(dim());
  for (Index k = 0; k < dim(); ++k) m(k) = (*this)[k].mean();
  return m;
}

Matrix ProductPrior::covariance() const {
  Matrix c = Matrix::Zero(dim(), dim());
  for (Index k = 0; k < dim(); ++k) c(k, k) = (*this)[k].variance();
  return c;
}

double ProductPrior::log_pdf(const Vector& u) const {
  double s = 0.0;
  for (Index k = 0; k < dim(); ++k) s += (*this)[k].log_pdf(u(k));
  return s;
}

Vector ProductPrior::draw(CounterRng& rng) const {
  Vector u(dim());
  for (Index k = 0; k < dim(); ++k) u(k) = (*this)[k].draw(rng);
  return u;
}

}  // namespace uqkf
