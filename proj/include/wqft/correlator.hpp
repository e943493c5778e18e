#pragma once

#include <Eigen/Core>

#include "wqft/coupling.hpp"
#include "wqft/field_config.hpp"
#include "wqft/gaussian.hpp"

namespace wqft {

/// <Phi_i Phi_j> = 1/2 (K^{-1/2})_{ij}, read from an already built ground state.
inline double two_point_correlator(const CovarianceMatrix& ground, Eigen::Index i,
                                   Eigen::Index j) {
  if (i < 0 || j < 0 || i >= ground.modes() || j >= ground.modes()) {
    throw std::out_of_range("correlator mode index out of range");
  }
  return ground.qq()(i, j);
}

inline double two_point_correlator(const CouplingMatrix& k, const FieldConfig& cfg,
                                   const ModeIndex& i, const ModeIndex& j) {
  const auto fi = flat_index(cfg, i);
  const auto fj = flat_index(cfg, j);
  if (k.dim() != cfg.mode_count()) {
    throw DimensionError("coupling matrix does not match the field configuration");
  }
  return 0.5 * matrix_power(k, -0.5)(fi, fj);
}

}  // namespace wqft
