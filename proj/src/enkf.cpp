#include "uqkf/enkf.hpp"

#include "uqkf/parallel.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <optional>
#include <string>

namespace uqkf {

NoiseModel::NoiseModel(Matrix covariance) : covariance_(std::move(covariance)) {
  require(covariance_.rows() >= 1 && covariance_.rows() == covariance_.cols(), "noise covariance must be square");
  require((covariance_ - covariance_.transpose()).cwiseAbs().maxCoeff() <=
              1e-12 * std::max(1.0, covariance_.cwiseAbs().maxCoeff()),
          "noise covariance must be symmetric");
  Eigen::LLT<Matrix> llt(covariance_);
  if (llt.info() == Eigen::Success) {
    factor_ = llt.matrixL();
  } else {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(covariance_);
    const double top = std::max(1.0, eig.eigenvalues().cwiseAbs().maxCoeff());
    require(eig.eigenvalues().minCoeff() >= -1e-12 * top, "noise covariance must be positive semidefinite");
    factor_ = eig.eigenvectors() * eig.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal();
  }
}

NoiseModel NoiseModel::diagonal(const Vector& variances) {
  require((variances.array() >= 0.0).all(), "noise variances must be >= 0");
  return NoiseModel(Matrix(variances.asDiagonal()));
}

Vector NoiseModel::draw(CounterRng& rng) const {
  Vector xi(dim());
  for (Index k = 0; k < dim(); ++k) xi(k) = rng.standard_normal();
  return factor_ * xi;
}

Matrix evaluate_members(const ForwardModel& forward, const Matrix& members) {
  require(members.rows() == forward.input_dim(), "forward input dimension differs from state dimension");
  const Index M = members.cols();
  Matrix out(forward.output_dim(), M);
  std::vector<std::optional<std::string>> failures(static_cast<std::size_t>(M));
  parallel_for(static_cast<std::size_t>(M), [&](std::size_t j) {
    try {
      out.col(static_cast<Index>(j)) = forward(members.col(static_cast<Index>(j)));
    } catch (const std::exception& e) {
      failures[j] = e.what();
    }
  });
  for (std::size_t j = 0; j < failures.size(); ++j)
    if (failures[j])
      throw ForwardModelError("forward model '" + forward.name() + "' failed at member " + std::to_string(j) +
                                  ": " + *failures[j],
                              static_cast<std::ptrdiff_t>(j));
  return out;
}

AssimilationRecord enkf_update_with_perturbations(const Ensemble& initial, const ForwardModel& forward,
                                                  const Matrix& perturbations, const Vector& z) {
  require(z.size() == forward.output_dim(), "data dimension differs from forward output dimension");
  require(perturbations.rows() == z.size() && perturbations.cols() == initial.size(),
          "perturbations must be d x M");
  Matrix zs = evaluate_members(forward, initial.members()) + perturbations;
  const auto moments = empirical_moments(initial.members(), zs);
  const auto czz = empirical_covariance(zs);
  auto gain = kalman_gain(moments.cov, czz);
  // u_j + K (zbar - z_j) does not depend on z; the data enters as one shift.
  const Vector shift = gain.K * (z - moments.mean_y);
  Matrix analysis = (initial.members() + gain.K * ((-zs).colwise() + moments.mean_y)).colwise() + shift;
  return {0, Ensemble(std::move(zs)), std::move(gain), Ensemble(std::move(analysis)), z};
}

AssimilationRecord enkf_update(const Ensemble& initial, const ForwardModel& forward, const NoiseModel& noise,
                               const Vector& z, std::uint64_t seed, Index step) {
  require(noise.dim() == forward.output_dim(), "noise dimension differs from forward output dimension");
  const Index M = initial.size();
  Matrix eps(noise.dim(), M);
  parallel_for(static_cast<std::size_t>(M), [&](std::size_t j) {
    CounterRng rng(seed, StreamPurpose::ForecastNoise, j, static_cast<std::uint64_t>(step));
    eps.col(static_cast<Index>(j)) = noise.draw(rng);
  });
  auto record = enkf_update_with_perturbations(initial, forward, eps, z);
  record.step = step;
  return record;
}

std::vector<AssimilationRecord> enkf_assimilate_sequential(const Ensemble& initial,
                                                           const std::vector<AssimilationStep>& steps,
                                                           std::uint64_t seed) {
  std::vector<AssimilationRecord> records;
  records.reserve(steps.size());
  const Ensemble* current = &initial;
  for (std::size_t n = 0; n < steps.size(); ++n) {
    const auto& s = steps[n];
    const std::string where = "assimilation step " + std::to_string(n + 1) + ": ";
    try {
      records.push_back(enkf_update(*current, s.forward, s.noise, s.data, seed, static_cast<Index>(n)));
    } catch (const ForwardModelError& e) {
      throw ForwardModelError(where + e.what(), e.index());
    } catch (const SingularCovarianceError& e) {
      throw SingularCovarianceError(where + e.what());
    } catch (const InvalidArgument& e) {
      throw InvalidArgument(where + e.what());
    }
    current = &records.back().analysis;
  }
  return records;
}

}  // namespace uqkf
