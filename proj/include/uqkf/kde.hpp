#pragma once

#include "uqkf/grid_density.hpp"

#include <optional>
#include <span>

namespace uqkf {

/// Silverman's rule 1.06 sigma_hat M^{-1/5}.
double silverman_bandwidth(std::span<const double> samples);

/// Gaussian-kernel density on [min - 3h, max + 3h] with 512 points,
/// renormalized to unit trapezoidal mass. Default bandwidth is Silverman's.
GridDensity kde_1d(std::span<const double> samples, std::optional<double> bandwidth = std::nullopt);

/// Same estimator evaluated on a caller-supplied axis (no renormalization).
GridDensity kde_on_axis(std::span<const double> samples, const Axis& axis,
                        std::optional<double> bandwidth = std::nullopt);

struct Histogram {
  Vector edges;   ///< bins + 1 edges
  Vector counts;
  Vector density;  ///< counts / (M * width): a relative-frequency density
};

/// Fixed-width histogram with the Freedman-Diaconis width 2 IQR M^{-1/3}.
Histogram freedman_diaconis_histogram(std::span<const double> samples);

}  // namespace uqkf
