#include "uqkf/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace uqkf {

double hellinger_grid(const GridDensity& p, const GridDensity& q) {
  require(p.axes() == q.axes(), "hellinger_grid: axis mismatch");
  const GridDensity pn = p.normalized();
  const GridDensity qn = q.normalized();
  double s = 0.0;
  for (Index i = 0; i < pn.size(); ++i) {
    const double d = std::sqrt(pn.values()(i)) - std::sqrt(qn.values()(i));
    s += pn.weight(i) * d * d;
  }
  return std::sqrt(s);
}

double wasserstein1_1d(std::span<const double> a, std::span<const double> b) {
  require(!a.empty() && !b.empty(), "wasserstein1_1d: empty sample list");
  std::vector<double> x(a.begin(), a.end());
  std::vector<double> y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  if (x.size() == y.size()) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += std::abs(x[i] - y[i]);
    return s / static_cast<double>(x.size());
  }
  // Area between the two empirical CDFs, swept over the merged support.
  const double nx = static_cast<double>(x.size());
  const double ny = static_cast<double>(y.size());
  std::size_t i = 0, j = 0;
  double prev = std::min(x.front(), y.front());
  double area = 0.0;
  while (i < x.size() || j < y.size()) {
    double next;
    if (j == y.size() || (i < x.size() && x[i] <= y[j]))
      next = x[i];
    else
      next = y[j];
    area += std::abs(static_cast<double>(i) / nx - static_cast<double>(j) / ny) * (next - prev);
    while (i < x.size() && x[i] == next) ++i;
    while (j < y.size() && y[j] == next) ++j;
    prev = next;
  }
  return area;
}

std::vector<double> row_values(const Matrix& members, Index row) {
  std::vector<double> v(static_cast<std::size_t>(members.cols()));
  for (Index j = 0; j < members.cols(); ++j) v[static_cast<std::size_t>(j)] = members(row, j);
  return v;
}

double sliced_wasserstein1(const Matrix& a, const Matrix& b, int directions) {
  require(a.rows() == b.rows(), "sliced_wasserstein1: dimension mismatch");
  require(directions >= 1, "sliced_wasserstein1 needs at least one direction");
  if (a.rows() == 1) return wasserstein1_1d(row_values(a, 0), row_values(b, 0));
  double total = 0.0;
  for (int k = 0; k < directions; ++k) {
    const double angle = std::numbers::pi * k / directions;
    Vector dir = Vector::Zero(a.rows());
    dir(0) = std::cos(angle);
    dir(1) = std::sin(angle);
    const Vector pa = a.transpose() * dir;
    const Vector pb = b.transpose() * dir;
    total += wasserstein1_1d({pa.data(), static_cast<std::size_t>(pa.size())},
                             {pb.data(), static_cast<std::size_t>(pb.size())});
  }
  return total / directions;
}

}  // namespace uqkf
