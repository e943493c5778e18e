#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>

#include <Eigen/Dense>
#include <fmt/format.h>
#include <lapacke.h>

#include "wqft/coupling.hpp"
#include "wqft/error.hpp"

namespace wqft {

struct SymmetricEigen {
  Eigen::VectorXd values;   ///< ascending
  Eigen::MatrixXd vectors;  ///< orthonormal columns
};

/// Full symmetric eigendecomposition (LAPACK divide and conquer).
inline SymmetricEigen symmetric_eigen(Eigen::MatrixXd a) {
  const auto n = static_cast<lapack_int>(a.rows());
  if (a.rows() != a.cols()) throw DimensionError("symmetric_eigen needs a square matrix");
  SymmetricEigen out;
  out.values.resize(n);
  if (n == 0) return out;
  const lapack_int info =
      LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'U', n, a.data(), n, out.values.data());
  if (info != 0) {
    throw NoConvergenceError(fmt::format("dsyevd failed with info={}", info));
  }
  out.vectors = std::move(a);
  return out;
}

/// Eigendecomposition of a coupling matrix with the small-eigenvalue floor
/// applied, ready for spectral functions.
class SpectralDecomposition {
 public:
  static constexpr double kFloor = 1e-12;
  static constexpr double kNegativeTolerance = 1e-9;

  explicit SpectralDecomposition(const Eigen::MatrixXd& k) {
    auto eig = symmetric_eigen(k);
    const double top = eig.values.size() ? eig.values.cwiseAbs().maxCoeff() : 0.0;
    if (eig.values.size() && eig.values(0) < -kNegativeTolerance * top) {
      throw NegativeEigenvalueError(fmt::format(
          "coupling matrix has eigenvalue {:.6g} (max {:.6g})", eig.values(0), top));
    }
    const double floor = kFloor * top;
    for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
      if (eig.values(i) < floor) {
        eig.values(i) = floor;
        ++floored_;
      }
    }
    values_ = std::move(eig.values);
    vectors_ = std::move(eig.vectors);
  }
  explicit SpectralDecomposition(const CouplingMatrix& k) : SpectralDecomposition(k.dense()) {}

  const Eigen::VectorXd& values() const { return values_; }
  const Eigen::MatrixXd& vectors() const { return vectors_; }
  /// Eigenvalues raised to the floor; nonzero means K was (numerically) singular.
  std::size_t floored() const { return floored_; }

  /// U diag(lambda^p) U^T, symmetrized.
  Eigen::MatrixXd power(double exponent) const {
    Eigen::MatrixXd scaled = vectors_;
    for (Eigen::Index j = 0; j < values_.size(); ++j) {
      scaled.col(j) *= std::pow(values_(j), exponent);
    }
    Eigen::MatrixXd out = scaled * vectors_.transpose();
    symmetrize(out);
    return out;
  }

 private:
  static void symmetrize(Eigen::MatrixXd& m) {
    const Eigen::Index n = m.rows();
    for (Eigen::Index c = 0; c < n; ++c) {
      for (Eigen::Index r = c + 1; r < n; ++r) {
        const double v = 0.5 * (m(r, c) + m(c, r));
        m(r, c) = v;
        m(c, r) = v;
      }
    }
  }

  Eigen::VectorXd values_;
  Eigen::MatrixXd vectors_;
  std::size_t floored_ = 0;
};

inline bool is_supported_power(double exponent) {
  return exponent == 0.5 || exponent == -0.5 || exponent == 0.25 || exponent == -0.25;
}

/// K^exponent for exponent in {+-1/2, +-1/4}.
inline Eigen::MatrixXd matrix_power(const Eigen::MatrixXd& k, double exponent) {
  if (!is_supported_power(exponent)) {
    throw std::invalid_argument(fmt::format("unsupported matrix exponent {}", exponent));
  }
  return SpectralDecomposition(k).power(exponent);
}

inline Eigen::MatrixXd matrix_power(const CouplingMatrix& k, double exponent) {
  return matrix_power(k.dense(), exponent);
}

}  // namespace wqft
