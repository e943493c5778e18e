#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <fmt/format.h>

#include "wqft/connection.hpp"
#include "wqft/field_config.hpp"
#include "wqft/refinement.hpp"

namespace wqft {

/// Symmetric V x V coupling matrix of the free-field quadratic form
/// H = 1/2 (pi^T pi + phi^T K phi). Stored sparse; immutable.
class CouplingMatrix {
 public:
  CouplingMatrix() = default;
  explicit CouplingMatrix(SparseMatrix k) : k_(std::move(k)) {
    k_.makeCompressed();
    if (k_.rows() != k_.cols()) {
      throw DimensionError("coupling matrix must be square");
    }
  }

  static CouplingMatrix from_dense(const Eigen::MatrixXd& dense) {
    return CouplingMatrix(dense.sparseView(0.0, 0.0));
  }

  Eigen::Index dim() const { return k_.rows(); }
  Eigen::Index nnz() const { return k_.nonZeros(); }
  const SparseMatrix& sparse() const { return k_; }
  Eigen::MatrixXd dense() const { return Eigen::MatrixXd(k_); }
  double coeff(Eigen::Index i, Eigen::Index j) const { return k_.coeff(i, j); }

  /// Largest |K_ij| over entries with |i - j| > bandwidth, restricted to the
  /// index range [begin, end).
  double max_outside_band(Eigen::Index begin, Eigen::Index end, int bandwidth) const {
    double worst = 0.0;
    for (Eigen::Index c = begin; c < end; ++c) {
      for (SparseMatrix::InnerIterator it(k_, c); it; ++it) {
        if (it.row() < begin || it.row() >= end) continue;
        if (std::abs(it.row() - c) > bandwidth) worst = std::max(worst, std::abs(it.value()));
      }
    }
    return worst;
  }

 private:
  SparseMatrix k_;
};

namespace detail {

// Append block (row offset, col offset); mirrored into the lower triangle
// when off-diagonal. Diagonal blocks contribute their upper triangle only
// and are mirrored, so the assembled matrix is exactly symmetric.
inline void place_block(Triplets& out, const SparseMatrix& block, Eigen::Index row0,
                        Eigen::Index col0, bool diagonal) {
  for (Eigen::Index c = 0; c < block.outerSize(); ++c) {
    for (SparseMatrix::InnerIterator it(block, c); it; ++it) {
      const Eigen::Index r = it.row();
      const double v = it.value();
      if (diagonal) {
        if (r > c) continue;
        out.emplace_back(row0 + r, col0 + c, v);
        if (r != c) out.emplace_back(col0 + c, row0 + r, v);
      } else {
        out.emplace_back(row0 + r, col0 + c, v);
        out.emplace_back(col0 + c, row0 + r, v);
      }
    }
  }
}

}  // namespace detail

/// Wavelet-basis coupling matrix
///
///   K_ss      = m0^2 I + D^0          (scale translates 0 .. L-1)
///   K_sw(l)   = D^{0,l}
///   K_ww(l,j) = m0^2 delta_{lj} I + D^{l,j}
///
/// laid out in the flat mode order (scale, wavelet level 0, level 1, ...).
/// Blocks are built in a fixed order, so the result is reproducible.
inline CouplingMatrix assemble_coupling(const FieldConfig& cfg) {
  cfg.validate();
  const FilterPair f = daubechies_filters(3);
  const Band d0 = d0_band(cfg.d0_source);
  const Eigen::Index dim = cfg.mode_count();
  const double mass2 = cfg.m0 * cfg.m0;

  Triplets t;
  {
    const SparseMatrix kss = derivative_band(d0, cfg.L, 0).topLeftCorner(cfg.L, cfg.L);
    detail::place_block(t, kss, 0, 0, true);
  }
  for (int l = 0; l < cfg.wavelet_levels(); ++l) {
    const Eigen::Index off_l = level_offset(cfg, l);
    const auto r0 = refinement_matrices(cfg.L, l, std::nullopt, f, d0);
    // K_sw(l) sits in the first block row, columns of level l
    detail::place_block(t, cross_scale_coupling_sparse(r0, false), 0, off_l, false);
    for (int j = 0; j <= l; ++j) {
      const auto rj = refinement_matrices(cfg.L, l, j, f, d0);
      const Eigen::Index off_j = level_offset(cfg, j);
      detail::place_block(t, cross_scale_coupling_sparse(rj, true), off_l, off_j, j == l);
    }
  }
  if (mass2 != 0.0) {
    for (Eigen::Index i = 0; i < dim; ++i) t.emplace_back(i, i, mass2);
  }
  SparseMatrix k(dim, dim);
  k.setFromTriplets(t.begin(), t.end());
  k.prune(0.0);
  return CouplingMatrix(std::move(k));
}

/// Nearest-neighbour lattice coupling with hard walls:
/// K = (4 + m0^2) on the diagonal, -2 between neighbours.
inline CouplingMatrix assemble_discrete_coupling(int n, double m0) {
  if (n < 2) {
    throw DimensionError(fmt::format("discrete lattice needs N >= 2, got {}", n));
  }
  Triplets t;
  t.reserve(3 * static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    t.emplace_back(i, i, 4.0 + m0 * m0);
    if (i + 1 < n) {
      t.emplace_back(i, i + 1, -2.0);
      t.emplace_back(i + 1, i, -2.0);
    }
  }
  SparseMatrix k(n, n);
  k.setFromTriplets(t.begin(), t.end());
  return CouplingMatrix(std::move(k));
}

}  // namespace wqft
