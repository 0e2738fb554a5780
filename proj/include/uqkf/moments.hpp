#pragma once

#include "uqkf/types.hpp"

#include <Eigen/Cholesky>

namespace uqkf {

template <typename Scalar>
struct EmpiricalMoments {
  VectorX<Scalar> mean_x;
  VectorX<Scalar> mean_y;
  MatrixX<Scalar> cov;  ///< Cov(X, Y), dim(X) x dim(Y)
};

/// Sample means and the unbiased cross-covariance
/// 1/(M-1) sum_j (x_j - xbar)(y_j - ybar)^T. Members are columns.
template <typename DerivedX, typename DerivedY>
EmpiricalMoments<typename DerivedX::Scalar> empirical_moments(const Eigen::MatrixBase<DerivedX>& x,
                                                              const Eigen::MatrixBase<DerivedY>& y) {
  using Scalar = typename DerivedX::Scalar;
  require(x.cols() == y.cols(), "empirical_moments: member counts differ");
  require(x.cols() >= 2, "empirical_moments needs M >= 2");
  const Scalar m = static_cast<Scalar>(x.cols());
  EmpiricalMoments<Scalar> out;
  out.mean_x = x.rowwise().sum() / m;
  out.mean_y = y.rowwise().sum() / m;
  const MatrixX<Scalar> xc = x.colwise() - out.mean_x;
  const MatrixX<Scalar> yc = y.colwise() - out.mean_y;
  out.cov = xc * yc.transpose() / (m - Scalar(1));
  return out;
}

template <typename Derived>
MatrixX<typename Derived::Scalar> empirical_covariance(const Eigen::MatrixBase<Derived>& x) {
  auto cov = empirical_moments(x, x).cov;
  return (cov + cov.transpose()) / typename Derived::Scalar(2);
}

template <typename Scalar>
struct GainMatrix {
  MatrixX<Scalar> K;      ///< n x d
  bool jittered = false;  ///< true when the diagonal jitter retry was needed
};

/// Solves K Czz = Cuz with a Cholesky factorization of Czz. On failure retries
/// once with 1e-12 trace(Czz)/d added to the diagonal.
template <typename DerivedU, typename DerivedZ>
GainMatrix<typename DerivedU::Scalar> kalman_gain(const Eigen::MatrixBase<DerivedU>& cuz,
                                                  const Eigen::MatrixBase<DerivedZ>& czz) {
  using Scalar = typename DerivedU::Scalar;
  const Index d = czz.rows();
  require(czz.cols() == d, "kalman_gain: Czz must be square");
  require(cuz.cols() == d, "kalman_gain: Cuz columns must match Czz");
  require(czz.allFinite() && cuz.allFinite(), "kalman_gain: non-finite covariance entries");

  MatrixX<Scalar> sym = (czz + czz.transpose()) / Scalar(2);
  GainMatrix<Scalar> out;
  Eigen::LLT<MatrixX<Scalar>> llt(sym);
  if (llt.info() != Eigen::Success) {
    const Scalar jitter = Scalar(1e-12) * sym.trace() / static_cast<Scalar>(d);
    sym.diagonal().array() += jitter;
    llt.compute(sym);
    out.jittered = true;
    if (llt.info() != Eigen::Success || !(jitter > Scalar(0)))
      throw SingularCovarianceError("Cov(Z) is singular: degenerate forecast ensemble");
  }
  out.K = llt.solve(cuz.transpose()).transpose();
  if (!out.K.allFinite()) throw SingularCovarianceError("Kalman gain is not finite");
  return out;
}

}  // namespace uqkf
