#pragma once

#include <cmath>
#include <vector>

#include <Eigen/Core>
#include <fmt/format.h>

#include "wqft/error.hpp"
#include "wqft/field_config.hpp"

namespace wqft {

/// Block A = [0, ell) measured in base-scale units.
struct RegionSpec {
  double ell = 0.0;
};

/// Leading-translate rule: a mode belongs to A when the left end of its
/// support lies in [0, ell). Scale n is in A iff n < ell, wavelet (l, n) iff
/// n 2^-l < ell. Returned in flat order.
inline std::vector<ModeIndex> region_modes(const FieldConfig& cfg, const RegionSpec& region) {
  if (!(region.ell > 0.0) || region.ell > cfg.L) {
    throw std::invalid_argument(
        fmt::format("region length {} must satisfy 0 < ell <= L = {}", region.ell, cfg.L));
  }
  std::vector<ModeIndex> out;
  for (int n = 0; n < cfg.L && n < region.ell; ++n) out.push_back(scale_mode(n));
  for (int l = 0; l < cfg.wavelet_levels(); ++l) {
    const int width = cfg.L << l;
    const double limit = std::ldexp(region.ell, l);
    for (int n = 0; n < width && n < limit; ++n) out.push_back(wavelet_mode(l, n));
  }
  if (out.empty()) throw EmptyRegionError("no mode has its support start inside the region");
  return out;
}

inline std::vector<Eigen::Index> flat_indices(const FieldConfig& cfg,
                                              const std::vector<ModeIndex>& modes) {
  std::vector<Eigen::Index> out;
  out.reserve(modes.size());
  for (const auto& m : modes) out.push_back(flat_index(cfg, m));
  return out;
}

/// Flat indices of the modes outside `modes` (sorted).
inline std::vector<Eigen::Index> complement(Eigen::Index total,
                                            const std::vector<Eigen::Index>& modes) {
  std::vector<char> in(static_cast<std::size_t>(total), 0);
  for (const auto i : modes) in[static_cast<std::size_t>(i)] = 1;
  std::vector<Eigen::Index> out;
  for (Eigen::Index i = 0; i < total; ++i) {
    if (!in[static_cast<std::size_t>(i)]) out.push_back(i);
  }
  return out;
}

}  // namespace wqft
