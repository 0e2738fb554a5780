#pragma once

#include "uqkf/grid_density.hpp"
#include "uqkf/types.hpp"

#include <span>
#include <vector>

namespace uqkf {

/// Hellinger distance [int (sqrt p - sqrt q)^2 du]^{1/2} by trapezoidal
/// quadrature, Lebesgue measure on the grid box. Inputs are normalized first.
double hellinger_grid(const GridDensity& p, const GridDensity& q);

/// Exact W1 between two empirical measures on the line (inputs need not be
/// sorted). Equal sizes reduce to mean |a_(i) - b_(i)|.
double wasserstein1_1d(std::span<const double> a, std::span<const double> b);

/// Mean of W1 over the projections of two point clouds (members as columns)
/// onto `directions` unit vectors at angles k*pi/directions in the plane of
/// the first two coordinates; 1-D clouds use the coordinate itself.
double sliced_wasserstein1(const Matrix& a, const Matrix& b, int directions = 8);

std::vector<double> row_values(const Matrix& members, Index row);

}  // namespace uqkf
