#pragma once

#include <random>

#include <Eigen/Dense>

namespace wqft::testing {

/// Random symmetric positive definite matrix with spectrum in [lo, hi].
inline Eigen::MatrixXd random_spd(int n, std::mt19937_64& rng, double lo = 0.2, double hi = 5.0) {
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> uniform(lo, hi);
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a(i, j) = normal(rng);
  }
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  const Eigen::MatrixXd q = qr.householderQ();
  Eigen::VectorXd d(n);
  for (int i = 0; i < n; ++i) d(i) = uniform(rng);
  Eigen::MatrixXd k = q * d.asDiagonal() * q.transpose();
  return 0.5 * (k + k.transpose());
}

}  // namespace wqft::testing
