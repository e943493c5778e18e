#pragma once

#include <cmath>

#include <Eigen/Dense>

#include "wqft/coupling.hpp"
#include "wqft/gaussian.hpp"
#include "wqft/linalg.hpp"

namespace wqft {

/// Gaussian unitary taking the uncorrelated vacuum to the ground state,
/// Y = K^{-1/4} (+) K^{1/4}, in passive-squeeze-passive form
///
///   Y = (U (+) U) diag(Lambda^{-1/4}, Lambda^{1/4}) (U^T (+) U^T),
///
/// with K = U Lambda U^T. Mode j is squeezed by r_j = -ln(lambda_j) / 4.
struct SymplecticPreparation {
  Eigen::MatrixXd passive;     ///< U (orthogonal), acts identically on q and p
  Eigen::VectorXd eigenvalues; ///< lambda_j (after the floor)
  Eigen::VectorXd squeezing;   ///< r_j
  Eigen::MatrixXd y_q;         ///< K^{-1/4}
  Eigen::MatrixXd y_p;         ///< K^{1/4}

  Eigen::Index modes() const { return passive.rows(); }

  Eigen::MatrixXd dense() const {
    const Eigen::Index v = modes();
    Eigen::MatrixXd y = Eigen::MatrixXd::Zero(2 * v, 2 * v);
    y.topLeftCorner(v, v) = y_q;
    y.bottomRightCorner(v, v) = y_p;
    return y;
  }

  Eigen::MatrixXd passive_dense() const {
    const Eigen::Index v = modes();
    Eigen::MatrixXd o = Eigen::MatrixXd::Zero(2 * v, 2 * v);
    o.topLeftCorner(v, v) = passive;
    o.bottomRightCorner(v, v) = passive;
    return o;
  }

  /// diag(e^{r_j}, e^{-r_j}) = diag(lambda^{-1/4}, lambda^{1/4}).
  Eigen::MatrixXd squeezer_dense() const {
    const Eigen::Index v = modes();
    Eigen::VectorXd d(2 * v);
    for (Eigen::Index j = 0; j < v; ++j) {
      d(j) = std::exp(squeezing(j));
      d(v + j) = std::exp(-squeezing(j));
    }
    return d.asDiagonal();
  }
};

inline SymplecticPreparation symplectic_preparation(const SpectralDecomposition& spectral) {
  SymplecticPreparation out;
  out.passive = spectral.vectors();
  out.eigenvalues = spectral.values();
  out.squeezing = -0.25 * out.eigenvalues.array().log();
  out.y_q = spectral.power(-0.25);
  out.y_p = spectral.power(0.25);
  return out;
}

inline SymplecticPreparation symplectic_preparation(const CouplingMatrix& k) {
  return symplectic_preparation(SpectralDecomposition(k));
}

/// ||Y Omega Y^T - Omega||_F.
inline double symplectic_residual(const Eigen::MatrixXd& y) {
  const Eigen::MatrixXd omega = symplectic_form(y.rows() / 2);
  return (y * omega * y.transpose() - omega).norm();
}

/// ||1/2 Y Y^T - Gamma||_F.
inline double covariance_residual(const Eigen::MatrixXd& y, const CovarianceMatrix& gamma) {
  return (0.5 * y * y.transpose() - gamma.dense()).norm();
}

/// ||Y - O S O^T||_F for the stored factors.
inline double factorization_residual(const SymplecticPreparation& prep) {
  const Eigen::MatrixXd o = prep.passive_dense();
  return (prep.dense() - o * prep.squeezer_dense() * o.transpose()).norm();
}

}  // namespace wqft
