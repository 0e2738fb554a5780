#pragma once

#include "uqkf/enkf.hpp"
#include "uqkf/ensemble.hpp"
#include "uqkf/forward_model.hpp"
#include "uqkf/grid_density.hpp"
#include "uqkf/marginal.hpp"
#include "uqkf/types.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace uqkf {

struct PosteriorSummary {
  Vector mean;  ///< conditional mean
  Matrix cov;
  Vector map;
  double log_gamma = 0.0;  ///< log of the evidence gamma(z)
  double gamma = 0.0;
  std::vector<GridDensity> marginals;
  std::vector<Axis> axes;  ///< grid actually used
  int refinements = 0;
  bool converged = true;  ///< false when refinement stopped at the size cap
};

struct PosteriorResult {
  GridDensity density;  ///< normalized, linear scale
  PosteriorSummary summary;
};

/// Box covering the prior: mean +- 8 sd for Gaussian factors, the support for
/// uniform ones. count points per axis.
std::vector<Axis> default_axes(const ProductPrior& prior, Index count);

/// Posterior pi^z(u) proportional to exp(-Phi(u; z)) pi0(u) with the Gaussian
/// potential Phi = |Sigma^{-1/2}(z - G(u))|^2 / 2, evaluated on the given axes.
PosteriorResult posterior_on_axes(const ProductPrior& prior, const ForwardModel& forward, const NoiseModel& noise,
                                  const Vector& z, const std::vector<Axis>& axes);

/// As posterior_on_axes with fixed axes. Without axes, starts from
/// default_axes (400 per axis in 2-D) and doubles the resolution until the
/// conditional mean moves by less than cm_tolerance per component.
PosteriorResult posterior_grid(const ProductPrior& prior, const ForwardModel& forward, const NoiseModel& noise,
                               const Vector& z, std::optional<std::vector<Axis>> axes = std::nullopt,
                               double cm_tolerance = 1e-3);

/// phi(z) = b + A z.
struct AffineEstimator {
  Vector b;
  Matrix A;
  Vector operator()(const Vector& z) const { return b + A * z; }
};

/// Prior moments of (U, Z), Z = G(U) + eps.
struct JointMoments {
  Vector mean_u;
  Vector mean_z;
  Matrix cov_uu;
  Matrix cov_uz;
  Matrix cov_zz;
};

struct MomentMethod {
  enum class Kind { Quadrature, MonteCarlo } kind = Kind::Quadrature;
  int order = 64;          ///< Gauss points per prior dimension
  Index samples = 100000;  ///< Monte Carlo size
  std::uint64_t seed = 0;

  static MomentMethod quadrature(int order = 64) { return {Kind::Quadrature, order, 0, 0}; }
  static MomentMethod montecarlo(Index samples, std::uint64_t seed) { return {Kind::MonteCarlo, 0, samples, seed}; }
};

JointMoments joint_moments(const ProductPrior& prior, const ForwardModel& forward, const NoiseModel& noise,
                           const MomentMethod& method = MomentMethod::quadrature());

/// A = Cov(U, Z) Cov(Z)^{-1}, b = E[U] - A E[Z].
AffineEstimator lcm_estimator(const JointMoments& moments);
AffineEstimator lcm_estimator(const ProductPrior& prior, const ForwardModel& forward, const NoiseModel& noise,
                              const MomentMethod& method = MomentMethod::quadrature());

/// Covariance of the analysis variable, Cov(U) - A Cov(Z, U).
Matrix analysis_covariance(const JointMoments& moments, const AffineEstimator& lcm);

/// Exact draws of U^a = U + A (z - Z): member j uses streams
/// (seed, ReferencePrior, j) and (seed, ReferenceNoise, j).
Ensemble analysis_reference_sampler(const ProductPrior& prior, const ForwardModel& forward, const NoiseModel& noise,
                                    const AffineEstimator& lcm, const Vector& z, Index M, std::uint64_t seed);

struct ProbePoint {
  Index axis = 0;  ///< data component that was perturbed
  double radius = 0.0;
  double distance = 0.0;  ///< Hellinger distance to the centre posterior
};

/// d_H(mu^{z_c}, mu^{z_c + r e_k}) for every radius r and data axis e_k, on
/// one shared grid (default_axes(prior, count)).
std::vector<ProbePoint> posterior_continuity_probe(const ProductPrior& prior, const ForwardModel& forward,
                                                   const NoiseModel& noise, const Vector& z_center,
                                                   const std::vector<double>& radii, Index count = 400);

}  // namespace uqkf
