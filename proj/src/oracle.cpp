#include "uqkf/oracle.hpp"

#include "uqkf/metrics.hpp"
#include "uqkf/moments.hpp"
#include "uqkf/orthopoly.hpp"
#include "uqkf/parallel.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>

namespace uqkf {
namespace {

// Largest grid the refinement loop will build.
constexpr Index kMaxGridPoints = Index{1} << 23;

struct Likelihood {
  Matrix lower;  // Cholesky factor of Sigma
  double log_const = 0.0;

  explicit Likelihood(const NoiseModel& noise) {
    Eigen::LLT<Matrix> llt(noise.covariance());
    if (llt.info() != Eigen::Success)
      throw InvalidArgument("posterior needs a positive definite noise covariance");
    lower = llt.matrixL();
    const double d = static_cast<double>(noise.dim());
    log_const = -0.5 * d * std::log(2.0 * std::numbers::pi) - lower.diagonal().array().log().sum();
  }

  double potential(const Vector& residual) const {
    return 0.5 * lower.triangularView<Eigen::Lower>().solve(residual).squaredNorm();
  }
};

Vector grid_mean(const GridDensity& p) {
  return grid_expectation(p, [](const Vector& u) { return Vector(u); });
}

// Vertex of the parabola through (-h, fm), (0, f0), (h, fp), as an offset.
double parabola_offset(double fm, double f0, double fp, double h) {
  const double curvature = fm - 2.0 * f0 + fp;
  if (!(curvature < 0.0)) return 0.0;
  return std::clamp(0.5 * h * (fm - fp) / curvature, -h, h);
}

}  // namespace

std::vector<Axis> default_axes(const ProductPrior& prior, Index count) {
  require(count >= 2, "grid needs at least two points per axis");
  std::vector<Axis> axes;
  for (const auto& m : prior.marginals()) {
    if (m.is_gaussian()) {
      const double sd = std::sqrt(m.variance());
      require(sd > 0.0, "grid posterior needs nondegenerate prior factors");
      axes.push_back({m.mean() - 8.0 * sd, m.mean() + 8.0 * sd, count});
    } else {
      axes.push_back({m.uniform().lower, m.uniform().upper, count});
    }
  }
  return axes;
}

PosteriorResult posterior_on_axes(const ProductPrior& prior, const ForwardModel& forward, const NoiseModel& noise,
                                  const Vector& z, const std::vector<Axis>& axes) {
  require(static_cast<Index>(axes.size()) == prior.dim(), "one axis per prior dimension");
  require(forward.input_dim() == prior.dim(), "forward input dimension differs from prior dimension");
  require(z.size() == forward.output_dim() && noise.dim() == z.size(), "data, forward and noise dimensions differ");
  const Likelihood lik(noise);

  Index total = 1;
  for (const auto& a : axes) total *= a.count;
  GridDensity shape(axes, Vector::Zero(total), true);

  Vector logp(total);
  std::vector<std::optional<std::string>> failures(static_cast<std::size_t>(total));
  parallel_for(static_cast<std::size_t>(total), [&](std::size_t i) {
    const Vector u = shape.point(static_cast<Index>(i));
    const double lp = prior.log_pdf(u);
    if (!std::isfinite(lp)) {
      logp(static_cast<Index>(i)) = -std::numeric_limits<double>::infinity();
      return;
    }
    try {
      logp(static_cast<Index>(i)) = lp - lik.potential(z - forward(u));
    } catch (const std::exception& e) {
      failures[i] = e.what();
    }
  });
  for (std::size_t i = 0; i < failures.size(); ++i)
    if (failures[i])
      throw ForwardModelError("forward model failed on posterior grid point " + std::to_string(i) + ": " +
                                  *failures[i],
                              static_cast<std::ptrdiff_t>(i));

  Index argmax = 0;
  const double top = logp.maxCoeff(&argmax);
  if (!std::isfinite(top)) throw IncompatibleDataError("posterior vanishes on the whole grid");

  GridDensity density = GridDensity(axes, logp, true).normalized();
  // normalized() divides exp(logp - top) by its integral I, so gamma = I e^top.
  double shifted_mass = 0.0;
  for (Index i = 0; i < total; ++i) shifted_mass += shape.weight(i) * std::exp(logp(i) - top);

  PosteriorSummary s;
  s.log_gamma = top + std::log(shifted_mass) + lik.log_const;
  if (s.log_gamma < std::log(1e-300))
    throw IncompatibleDataError("evidence gamma(z) = exp(" + std::to_string(s.log_gamma) +
                                ") underflows: data incompatible with prior and grid");
  s.gamma = std::exp(s.log_gamma);
  s.mean = grid_mean(density);
  s.cov = grid_expectation(density, [&](const Vector& u) -> Matrix {
    const Vector c = u - s.mean;
    return c * c.transpose();
  });
  s.cov = (s.cov + s.cov.transpose()) / 2.0;

  s.map = density.point(argmax);
  auto idx = density.unravel(argmax);
  for (Index k = 0; k < density.dim(); ++k) {
    const auto& axis = axes[static_cast<std::size_t>(k)];
    const Index c = idx[static_cast<std::size_t>(k)];
    if (c == 0 || c + 1 >= axis.count) continue;
    auto lo = idx, hi = idx;
    lo[static_cast<std::size_t>(k)] = c - 1;
    hi[static_cast<std::size_t>(k)] = c + 1;
    s.map(k) += parabola_offset(logp(density.ravel(lo)), top, logp(density.ravel(hi)), axis.step());
  }

  for (Index k = 0; k < density.dim(); ++k) s.marginals.push_back(density.marginal(k));
  s.axes = axes;
  return {std::move(density), std::move(s)};
}

PosteriorResult posterior_grid(const ProductPrior& prior, const ForwardModel& forward, const NoiseModel& noise,
                               const Vector& z, std::optional<std::vector<Axis>> axes, double cm_tolerance) {
  if (axes) return posterior_on_axes(prior, forward, noise, z, *axes);

  const Index start = prior.dim() == 1 ? 4001 : prior.dim() == 2 ? 400 : 40;
  auto grid = default_axes(prior, start);
  auto result = posterior_on_axes(prior, forward, noise, z, grid);
  for (int level = 1;; ++level) {
    Index next_total = 1;
    for (auto& a : grid) {
      a.count = 2 * a.count - 1;
      next_total *= a.count;
    }
    if (next_total > kMaxGridPoints) {
      result.summary.converged = false;
      return result;
    }
    auto finer = posterior_on_axes(prior, forward, noise, z, grid);
    const double moved = (finer.summary.mean - result.summary.mean).cwiseAbs().maxCoeff();
    finer.summary.refinements = level;
    result = std::move(finer);
    if (moved < cm_tolerance) return result;
  }
}

JointMoments joint_moments(const ProductPrior& prior, const ForwardModel& forward, const NoiseModel& noise,
                           const MomentMethod& method) {
  require(forward.input_dim() == prior.dim(), "forward input dimension differs from prior dimension");
  require(noise.dim() == forward.output_dim(), "noise dimension differs from forward output dimension");
  const Index n = prior.dim();
  JointMoments out;

  if (method.kind == MomentMethod::Kind::MonteCarlo) {
    require(method.samples >= 2, "Monte Carlo moments need at least two samples");
    Matrix us(n, method.samples);
    parallel_for(static_cast<std::size_t>(method.samples), [&](std::size_t j) {
      CounterRng rng(method.seed, StreamPurpose::MonteCarloMoments, j);
      us.col(static_cast<Index>(j)) = prior.draw(rng);
    });
    const Matrix gs = evaluate_members(forward, us);
    const auto uz = empirical_moments(us, gs);
    out.mean_u = uz.mean_x;
    out.mean_z = uz.mean_y;
    out.cov_uu = empirical_covariance(us);
    out.cov_uz = uz.cov;
    out.cov_zz = empirical_covariance(gs) + noise.covariance();
    return out;
  }

  require(method.order >= 1, "quadrature order must be >= 1");
  std::vector<GaussRule> rules;
  for (const auto& m : prior.marginals())
    rules.push_back(gauss_rule(m.is_gaussian() ? GermFamily::Hermite : GermFamily::Legendre, method.order));
  Index total = 1;
  for (Index k = 0; k < n; ++k) total *= method.order;

  Matrix us(n, total);
  Vector w(total);
  for (Index i = 0; i < total; ++i) {
    Index rest = i;
    double wi = 1.0;
    for (Index k = n; k-- > 0;) {
      const Index q = rest % method.order;
      rest /= method.order;
      const auto& rule = rules[static_cast<std::size_t>(k)];
      us(k, i) = prior[k].from_germ(rule.nodes(q));
      wi *= rule.weights(q);
    }
    w(i) = wi;
  }
  const Matrix gs = evaluate_members(forward, us);
  out.mean_u = us * w;
  out.mean_z = gs * w;
  const Matrix uc = us.colwise() - out.mean_u;
  const Matrix gc = gs.colwise() - out.mean_z;
  out.cov_uu = uc * w.asDiagonal() * uc.transpose();
  out.cov_uz = uc * w.asDiagonal() * gc.transpose();
  out.cov_zz = gc * w.asDiagonal() * gc.transpose() + noise.covariance();
  out.cov_uu = (out.cov_uu + out.cov_uu.transpose()) / 2.0;
  out.cov_zz = (out.cov_zz + out.cov_zz.transpose()) / 2.0;
  return out;
}

AffineEstimator lcm_estimator(const JointMoments& moments) {
  const auto gain = kalman_gain(moments.cov_uz, moments.cov_zz);
  return {moments.mean_u - gain.K * moments.mean_z, gain.K};
}

AffineEstimator lcm_estimator(const ProductPrior& prior, const ForwardModel& forward, const NoiseModel& noise,
                              const MomentMethod& method) {
  return lcm_estimator(joint_moments(prior, forward, noise, method));
}

Matrix analysis_covariance(const JointMoments& moments, const AffineEstimator& lcm) {
  const Matrix c = moments.cov_uu - lcm.A * moments.cov_uz.transpose();
  return (c + c.transpose()) / 2.0;
}

Ensemble analysis_reference_sampler(const ProductPrior& prior, const ForwardModel& forward, const NoiseModel& noise,
                                    const AffineEstimator& lcm, const Vector& z, Index M, std::uint64_t seed) {
  require(M >= 2, "reference sampler needs M >= 2");
  require(lcm.A.rows() == prior.dim() && lcm.A.cols() == z.size(), "estimator dimensions differ from problem");
  Matrix us(prior.dim(), M);
  Matrix eps(noise.dim(), M);
  parallel_for(static_cast<std::size_t>(M), [&](std::size_t j) {
    CounterRng prior_rng(seed, StreamPurpose::ReferencePrior, j);
    CounterRng noise_rng(seed, StreamPurpose::ReferenceNoise, j);
    us.col(static_cast<Index>(j)) = prior.draw(prior_rng);
    eps.col(static_cast<Index>(j)) = noise.draw(noise_rng);
  });
  const Matrix zs = evaluate_members(forward, us) + eps;
  return Ensemble(us + lcm.A * ((-zs).colwise() + z));
}

std::vector<ProbePoint> posterior_continuity_probe(const ProductPrior& prior, const ForwardModel& forward,
                                                   const NoiseModel& noise, const Vector& z_center,
                                                   const std::vector<double>& radii, Index count) {
  const auto axes = default_axes(prior, count);
  const auto centre = posterior_on_axes(prior, forward, noise, z_center, axes);
  std::vector<ProbePoint> out;
  for (Index k = 0; k < z_center.size(); ++k) {
    for (double r : radii) {
      require(r >= 0.0, "probe radii must be >= 0");
      Vector z = z_center;
      z(k) += r;
      const auto moved = posterior_on_axes(prior, forward, noise, z, axes);
      out.push_back({k, r, hellinger_grid(centre.density, moved.density)});
    }
  }
  return out;
}

}  // namespace uqkf
