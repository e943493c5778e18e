#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <fmt/format.h>

#include "wqft/connection.hpp"
#include "wqft/error.hpp"
#include "wqft/filters.hpp"

namespace wqft {

using SparseMatrix = Eigen::SparseMatrix<double>;
using Triplets = std::vector<Eigen::Triplet<double>>;

/// Number of level-k translates whose support [n 2^-k, (n+5) 2^-k] lies in
/// [0, L+4], the hull of the hard-wall scale functions s_0 .. s_{L-1}.
inline int level_size(int L, int level) {
  return (1 << level) * (L + 4) - 4;
}

namespace detail {

inline void check_levels(int L, int l, std::optional<int> j) {
  if (L < 5) {
    throw DimensionError(fmt::format("system size L={} is below the support width 5", L));
  }
  if (l < 0 || l > 20) {
    throw DimensionError(fmt::format("wavelet level l={} out of range", l));
  }
  if (j && (*j < 0 || *j > l)) {
    throw DimensionError(fmt::format("need 0 <= j <= l, got j={} l={}", *j, l));
  }
}

}  // namespace detail

/// H_k: level-k scale translates expressed at level k+1, entries h_{n-2m}.
/// Shape level_size(L,k) x level_size(L,k+1).
inline SparseMatrix scale_step(const FilterPair& f, int L, int level) {
  const int rows = level_size(L, level);
  const int cols = level_size(L, level + 1);
  Triplets t;
  t.reserve(static_cast<std::size_t>(rows) * f.size());
  for (int m = 0; m < rows; ++m) {
    for (std::size_t k = 0; k < f.size(); ++k) {
      const int n = 2 * m + static_cast<int>(k);
      if (n < cols) t.emplace_back(m, n, f.h[k]);
    }
  }
  SparseMatrix out(rows, cols);
  out.setFromTriplets(t.begin(), t.end());
  return out;
}

/// G_k: the L 2^k kept level-k wavelets expressed at level k+1, entries
/// g_{n-2m}.
inline SparseMatrix wavelet_step(const FilterPair& f, int L, int level) {
  const int rows = L << level;
  const int cols = level_size(L, level + 1);
  Triplets t;
  t.reserve(static_cast<std::size_t>(rows) * f.size());
  for (int m = 0; m < rows; ++m) {
    for (std::size_t k = 0; k < f.size(); ++k) {
      t.emplace_back(m, 2 * m + static_cast<int>(k), f.g[k]);
    }
  }
  SparseMatrix out(rows, cols);
  out.setFromTriplets(t.begin(), t.end());
  return out;
}

/// D^0 band on the level-k index range (unscaled; multiply by 4^k for the
/// level-k derivative overlaps).
inline SparseMatrix derivative_band(const Band& d0, int L, int level) {
  const int n = level_size(L, level);
  Triplets t;
  t.reserve(static_cast<std::size_t>(n) * (2 * kBandHalfWidth + 1));
  for (int m = 0; m < n; ++m) {
    for (int k = -kBandHalfWidth; k <= kBandHalfWidth; ++k) {
      const int c = m + k;
      if (c >= 0 && c < n) t.emplace_back(m, c, d0[std::abs(k)]);
    }
  }
  SparseMatrix out(n, n);
  out.setFromTriplets(t.begin(), t.end());
  return out;
}

/// Product H_from H_{from+1} ... H_{to-1}; identity when from == to.
inline SparseMatrix scale_transfer(const FilterPair& f, int L, int from, int to) {
  SparseMatrix acc(level_size(L, from), level_size(L, from));
  acc.setIdentity();
  for (int k = from; k < to; ++k) {
    SparseMatrix next = acc * scale_step(f, L, k);
    acc = std::move(next);
  }
  return acc;
}

/// Band matrices carrying both mode families of a coupling block to the
/// common fine level l+1.
///
/// Without `j`: `H` holds the L base-scale functions at level l+1
/// (H_0 ... H_l), `G` the level-l wavelets (G_l).
/// With `j`: `H` holds the level-j wavelets at level l+1 (G_j H_{j+1} ... H_l).
/// `D` is the unscaled D^0 band on the level-(l+1) range in both cases.
struct RefinementMatrices {
  int fine_level = 0;
  SparseMatrix H;
  SparseMatrix G;
  SparseMatrix D;
};

inline RefinementMatrices refinement_matrices(int L, int l, std::optional<int> j,
                                              const FilterPair& f,
                                              const Band& d0) {
  detail::check_levels(L, l, j);
  RefinementMatrices r;
  r.fine_level = l + 1;
  if (j) {
    r.H = wavelet_step(f, L, *j) * scale_transfer(f, L, *j + 1, l + 1);
  } else {
    const SparseMatrix all = scale_transfer(f, L, 0, l + 1);
    r.H = all.topRows(L);
  }
  r.G = wavelet_step(f, L, l);
  r.D = derivative_band(d0, L, l + 1);
  return r;
}

inline RefinementMatrices refinement_matrices(int L, int l, std::optional<int> j = {},
                                              D0Source source = D0Source::refinement) {
  return refinement_matrices(L, l, j, daubechies_filters(3), d0_band(source));
}

/// Sparse D^{0,l} (L x L2^l) or, with `j`, D^{l,j} (L2^l x L2^j).
inline SparseMatrix cross_scale_coupling_sparse(const RefinementMatrices& r,
                                                bool wavelet_pair) {
  const double prefactor = std::ldexp(1.0, 2 * r.fine_level);
  SparseMatrix out;
  if (wavelet_pair) {
    const SparseMatrix ht = r.H.transpose();
    const SparseMatrix gd = r.G * r.D;
    out = gd * ht;
  } else {
    const SparseMatrix gt = r.G.transpose();
    const SparseMatrix hd = r.H * r.D;
    out = hd * gt;
  }
  out *= prefactor;
  out.prune(0.0);
  return out;
}

/// Scale-wavelet block D^{0,l}_{a,b} = int s'_a (w^l_b)' dx, or with `j` the
/// wavelet-wavelet block D^{l,j}_{a,b} = int (w^l_a)' (w^j_b)' dx.
inline Eigen::MatrixXd cross_scale_coupling(int L, int l, std::optional<int> j = {},
                                            D0Source source = D0Source::refinement) {
  const auto r = refinement_matrices(L, l, j, source);
  return Eigen::MatrixXd(cross_scale_coupling_sparse(r, j.has_value()));
}

}  // namespace wqft
