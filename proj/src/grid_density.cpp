#include "uqkf/grid_density.hpp"

#include <cmath>

namespace uqkf {

Vector Axis::points() const {
  Vector p(count);
  for (Index i = 0; i < count; ++i) p(i) = at(i);
  return p;
}

Vector Axis::weights() const {
  Vector w = Vector::Constant(count, step());
  w(0) *= 0.5;
  w(count - 1) *= 0.5;
  return w;
}

GridDensity::GridDensity(std::vector<Axis> axes, Vector values, bool log_scale)
    : axes_(std::move(axes)), values_(std::move(values)), log_scale_(log_scale) {
  require(!axes_.empty(), "grid density needs at least one axis");
  Index total = 1;
  for (const auto& a : axes_) {
    require(a.count >= 2 && a.max > a.min, "grid axis needs count >= 2 and max > min");
    total *= a.count;
  }
  require(values_.size() == total, "grid values do not match axes");
  if (!log_scale_) require((values_.array() >= 0.0).all(), "grid density values must be >= 0");
  strides_.assign(axes_.size(), 1);
  for (std::size_t k = axes_.size() - 1; k > 0; --k) strides_[k - 1] = strides_[k] * axes_[k].count;
  for (const auto& a : axes_) axis_weights_.push_back(a.weights());
}

std::vector<Index> GridDensity::unravel(Index flat) const {
  std::vector<Index> idx(axes_.size());
  for (std::size_t k = 0; k < axes_.size(); ++k) {
    idx[k] = flat / strides_[k];
    flat %= strides_[k];
  }
  return idx;
}

Index GridDensity::ravel(const std::vector<Index>& idx) const {
  Index flat = 0;
  for (std::size_t k = 0; k < axes_.size(); ++k) flat += idx[k] * strides_[k];
  return flat;
}

Vector GridDensity::point(Index flat) const {
  const auto idx = unravel(flat);
  Vector x(dim());
  for (std::size_t k = 0; k < axes_.size(); ++k) x(static_cast<Index>(k)) = axes_[k].at(idx[k]);
  return x;
}

double GridDensity::weight(Index flat) const {
  double w = 1.0;
  for (std::size_t k = 0; k < axes_.size(); ++k) {
    w *= axis_weights_[k](flat / strides_[k]);
    flat %= strides_[k];
  }
  return w;
}

double GridDensity::integral() const {
  const GridDensity lin = log_scale_ ? GridDensity(axes_, values_.array().exp().matrix()) : *this;
  double s = 0.0;
  for (Index i = 0; i < size(); ++i) s += lin.weight(i) * lin.values_(i);
  return s;
}

GridDensity GridDensity::normalized() const {
  Vector v = values_;
  if (log_scale_) {
    const double top = v.maxCoeff();
    require(std::isfinite(top), "log density has no finite maximum");
    v = (v.array() - top).exp().matrix();
  }
  GridDensity out(axes_, std::move(v));
  const double mass = out.integral();
  require(mass > 0.0 && std::isfinite(mass), "grid density has zero or non-finite mass");
  out.values_ /= mass;
  return out;
}

GridDensity GridDensity::marginal(Index k) const {
  require(k >= 0 && k < dim(), "marginal axis out of range");
  const GridDensity p = normalized();
  const Axis& ax = axes_[static_cast<std::size_t>(k)];
  Vector m = Vector::Zero(ax.count);
  const Index stride = strides_[static_cast<std::size_t>(k)];
  const Vector& wk = axis_weights_[static_cast<std::size_t>(k)];
  for (Index i = 0; i < size(); ++i) {
    const Index ik = (i / stride) % ax.count;
    // Full tensor weight divided by this axis' own weight.
    m(ik) += weight(i) / wk(ik) * p.values_(i);
  }
  return GridDensity({ax}, std::move(m)).normalized();
}

}  // namespace uqkf
