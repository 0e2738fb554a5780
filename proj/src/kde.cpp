#include "uqkf/kde.hpp"

#include "uqkf/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace uqkf {
namespace {

double sample_sd(std::span<const double> s) {
  double mean = 0.0;
  for (double v : s) mean += v;
  mean /= static_cast<double>(s.size());
  double ss = 0.0;
  for (double v : s) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / static_cast<double>(s.size() - 1));
}

double quantile(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

void check_samples(std::span<const double> samples) {
  if (samples.size() < 2) throw DegenerateSampleError("KDE needs at least two samples");
  const auto [lo, hi] = std::minmax_element(samples.begin(), samples.end());
  if (*lo == *hi) throw DegenerateSampleError("KDE sample has zero variance");
}

}  // namespace

double silverman_bandwidth(std::span<const double> samples) {
  check_samples(samples);
  return 1.06 * sample_sd(samples) * std::pow(static_cast<double>(samples.size()), -0.2);
}

GridDensity kde_on_axis(std::span<const double> samples, const Axis& axis, std::optional<double> bandwidth) {
  check_samples(samples);
  const double h = bandwidth.value_or(silverman_bandwidth(samples));
  require(h > 0.0, "KDE bandwidth must be positive");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double norm = 1.0 / (static_cast<double>(sorted.size()) * h * std::sqrt(2.0 * std::numbers::pi));
  const double cutoff = 9.0 * h;  // kernel tail below e^{-40}
  Vector values(axis.count);
  parallel_for(static_cast<std::size_t>(axis.count), [&](std::size_t i) {
    const double x = axis.at(static_cast<Index>(i));
    auto it = std::lower_bound(sorted.begin(), sorted.end(), x - cutoff);
    const auto end = std::upper_bound(it, sorted.end(), x + cutoff);
    double s = 0.0;
    for (; it != end; ++it) {
      const double r = (x - *it) / h;
      s += std::exp(-0.5 * r * r);
    }
    values(static_cast<Index>(i)) = s * norm;
  });
  return GridDensity({axis}, std::move(values));
}

GridDensity kde_1d(std::span<const double> samples, std::optional<double> bandwidth) {
  check_samples(samples);
  const double h = bandwidth.value_or(silverman_bandwidth(samples));
  const auto [lo, hi] = std::minmax_element(samples.begin(), samples.end());
  return kde_on_axis(samples, Axis{*lo - 3.0 * h, *hi + 3.0 * h, 512}, h).normalized();
}

Histogram freedman_diaconis_histogram(std::span<const double> samples) {
  check_samples(samples);
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  const double lo = sorted.front(), hi = sorted.back();
  double width = 2.0 * (quantile(sorted, 0.75) - quantile(sorted, 0.25)) * std::pow(n, -1.0 / 3.0);
  if (!(width > 0.0)) width = (hi - lo) / std::max(1.0, std::sqrt(n));
  const auto bins = std::max<Index>(1, static_cast<Index>(std::ceil((hi - lo) / width)));
  Histogram h;
  h.edges = Vector::LinSpaced(bins + 1, lo, lo + width * static_cast<double>(bins));
  h.counts = Vector::Zero(bins);
  for (double v : sorted) {
    auto b = static_cast<Index>((v - lo) / width);
    h.counts(std::min(b, bins - 1)) += 1.0;
  }
  h.density = h.counts / (n * width);
  return h;
}

}  // namespace uqkf
