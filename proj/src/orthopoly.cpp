#include "uqkf/orthopoly.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <map>
#include <mutex>

namespace uqkf {

std::string to_string(GermFamily family) {
  return family == GermFamily::Hermite ? "hermite" : "legendre";
}

GermFamily germ_family_from_string(const std::string& name) {
  if (name == "hermite") return GermFamily::Hermite;
  if (name == "legendre") return GermFamily::Legendre;
  throw InvalidArgument("unknown germ family '" + name + "'");
}

double recurrence_coefficient(GermFamily family, int n) {
  if (n <= 0) return 0.0;
  if (family == GermFamily::Hermite) return std::sqrt(static_cast<double>(n));
  const double dn = n;
  return dn / std::sqrt(4.0 * dn * dn - 1.0);
}

void orthonormal_values(GermFamily family, int degree, double x, double* out) {
  out[0] = 1.0;
  if (degree == 0) return;
  out[1] = x / recurrence_coefficient(family, 1);
  for (int n = 1; n < degree; ++n)
    out[n + 1] = (x * out[n] - recurrence_coefficient(family, n) * out[n - 1]) /
                 recurrence_coefficient(family, n + 1);
}

Vector orthonormal_values(GermFamily family, int degree, double x) {
  require(degree >= 0, "polynomial degree must be >= 0");
  Vector v(degree + 1);
  orthonormal_values(family, degree, x, v.data());
  return v;
}

namespace {

GaussRule compute_rule(GermFamily family, int points) {
  Matrix jacobi = Matrix::Zero(points, points);
  for (int i = 1; i < points; ++i) {
    jacobi(i, i - 1) = jacobi(i - 1, i) = recurrence_coefficient(family, i);
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(jacobi, Eigen::EigenvaluesOnly);
  Vector nodes = solver.eigenvalues();

  Vector p(points + 1);
  Vector dp(points + 1);
  for (int i = 0; i < points; ++i) {
    double x = nodes(i);
    for (int iter = 0; iter < 4; ++iter) {
      // p_points and its derivative through the same recurrence.
      p(0) = 1.0;
      dp(0) = 0.0;
      p(1) = x / recurrence_coefficient(family, 1);
      dp(1) = 1.0 / recurrence_coefficient(family, 1);
      for (int n = 1; n < points; ++n) {
        const double b = recurrence_coefficient(family, n);
        const double bn = recurrence_coefficient(family, n + 1);
        p(n + 1) = (x * p(n) - b * p(n - 1)) / bn;
        dp(n + 1) = (p(n) + x * dp(n) - b * dp(n - 1)) / bn;
      }
      if (dp(points) == 0.0) break;
      const double step = p(points) / dp(points);
      x -= step;
      if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(x))) break;
    }
    nodes(i) = x;
  }

  Vector weights(points);
  Vector values(points);
  for (int i = 0; i < points; ++i) {
    orthonormal_values(family, points - 1, nodes(i), values.data());
    weights(i) = 1.0 / values.squaredNorm();
  }
  // Symmetric measures: enforce exact symmetry of the rule.
  for (int i = 0; i < points / 2; ++i) {
    const int j = points - 1 - i;
    const double x = 0.5 * (nodes(j) - nodes(i));
    nodes(i) = -x;
    nodes(j) = x;
    const double w = 0.5 * (weights(i) + weights(j));
    weights(i) = weights(j) = w;
  }
  if (points % 2 == 1) nodes(points / 2) = 0.0;
  return {nodes, weights};
}

}  // namespace

GaussRule gauss_rule(GermFamily family, int points) {
  require(points >= 1, "Gauss rule needs at least one point");
  static std::mutex mutex;
  static std::map<std::pair<int, int>, GaussRule> cache;
  std::lock_guard lock(mutex);
  const auto key = std::make_pair(static_cast<int>(family), points);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, compute_rule(family, points)).first;
  return it->second;
}

}  // namespace uqkf
