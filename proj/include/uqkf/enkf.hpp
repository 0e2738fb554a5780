#pragma once

#include "uqkf/ensemble.hpp"
#include "uqkf/forward_model.hpp"
#include "uqkf/moments.hpp"
#include "uqkf/random.hpp"
#include "uqkf/types.hpp"

#include <cstdint>
#include <vector>

namespace uqkf {

/// Centered Gaussian observation noise N(0, covariance).
class NoiseModel {
 public:
  explicit NoiseModel(Matrix covariance);
  static NoiseModel diagonal(const Vector& variances);

  Index dim() const { return covariance_.rows(); }
  const Matrix& covariance() const { return covariance_; }
  /// Square-root factor S with S S^T = covariance.
  const Matrix& factor() const { return factor_; }
  Vector draw(CounterRng& rng) const;

 private:
  Matrix covariance_;
  Matrix factor_;
};

struct AssimilationRecord {
  Index step = 0;
  Ensemble forecast;  ///< z_j = G(u_j) + eps_j
  GainMatrix<double> gain;
  Ensemble analysis;  ///< u_j + K (z - z_j)
  Vector data;
};

/// Perturbed-observation EnKF update with given noise draws (one column per
/// member). The analysis is u_j + K (z - z_j), K = Cov(u, z) Cov(z)^{-1}.
AssimilationRecord enkf_update_with_perturbations(const Ensemble& initial, const ForwardModel& forward,
                                                  const Matrix& perturbations, const Vector& z);

/// EnKF update with fresh noise; member j draws from stream (seed, ForecastNoise, j, step).
AssimilationRecord enkf_update(const Ensemble& initial, const ForwardModel& forward, const NoiseModel& noise,
                               const Vector& z, std::uint64_t seed, Index step = 0);

struct AssimilationStep {
  ForwardModel forward;
  NoiseModel noise;
  Vector data;
};

/// Chains updates: the analysis of step n is the initial ensemble of n + 1.
std::vector<AssimilationRecord> enkf_assimilate_sequential(const Ensemble& initial,
                                                           const std::vector<AssimilationStep>& steps,
                                                           std::uint64_t seed);

/// Forward evaluation of every member; a failure reports the lowest failing index.
Matrix evaluate_members(const ForwardModel& forward, const Matrix& members);

}  // namespace uqkf
