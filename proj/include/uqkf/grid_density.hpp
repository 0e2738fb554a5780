#pragma once

#include "uqkf/types.hpp"

#include <vector>

namespace uqkf {

/// Uniform grid [min, max] with count >= 2 points, endpoints included.
struct Axis {
  double min = 0.0;
  double max = 1.0;
  Index count = 2;

  double step() const { return (max - min) / static_cast<double>(count - 1); }
  double at(Index i) const { return min + step() * static_cast<double>(i); }
  Vector points() const;
  /// Trapezoidal weights.
  Vector weights() const;
  friend bool operator==(const Axis&, const Axis&) = default;
};

/// Density values on a tensor grid, row-major (last axis fastest). When
/// log_scale is set the values are log-densities.
class GridDensity {
 public:
  GridDensity(std::vector<Axis> axes, Vector values, bool log_scale = false);

  const std::vector<Axis>& axes() const { return axes_; }
  const Vector& values() const { return values_; }
  bool log_scale() const { return log_scale_; }
  Index dim() const { return static_cast<Index>(axes_.size()); }
  Index size() const { return values_.size(); }

  /// Multi-index of grid point `flat`.
  std::vector<Index> unravel(Index flat) const;
  Index ravel(const std::vector<Index>& idx) const;
  Vector point(Index flat) const;
  /// Tensor trapezoidal weight of grid point `flat`.
  double weight(Index flat) const;

  /// Trapezoidal integral of the (linear-scale) density.
  double integral() const;
  /// Linear-scale copy rescaled to unit trapezoidal mass; log-scale inputs
  /// are exponentiated after subtracting their maximum.
  GridDensity normalized() const;
  /// Marginal on axis k (normalized, linear scale).
  GridDensity marginal(Index k) const;

 private:
  std::vector<Axis> axes_;
  Vector values_;
  bool log_scale_;
  std::vector<Index> strides_;
  std::vector<Vector> axis_weights_;
};

/// Expected value of f under a normalized density by trapezoidal quadrature.
template <typename F>
auto grid_expectation(const GridDensity& p, F&& f) {
  using Result = decltype(f(p.point(0)));
  Result acc = f(p.point(0)) * 0.0;
  for (Index i = 0; i < p.size(); ++i) {
    const double w = p.weight(i) * p.values()(i);
    if (w != 0.0) acc += w * f(p.point(i));
  }
  return acc;
}

}  // namespace uqkf
