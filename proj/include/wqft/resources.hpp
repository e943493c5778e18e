#pragma once

#include <cmath>
#include <cstdint>
#include <optional>

#include <fmt/format.h>

#include "wqft/coupling.hpp"
#include "wqft/field_config.hpp"
#include "wqft/momentum.hpp"

namespace wqft {

struct ResourceReport {
  int dimension = 1;
  std::int64_t modes = 0;           ///< V = (L 2^{l_max+1})^d
  std::int64_t lattice_sites = 0;   ///< N = L 2^{l_max}, matched discrete basis per axis
  std::int64_t lattice_modes = 0;   ///< V' = N^d
  double max_momentum = 0.0;        ///< 0.663 * 2^{l_max}
  std::optional<std::int64_t> nnz;  ///< structural nonzeros of K (d = 1 only)
  double nnz_bound = 0.0;           ///< 10 V (log2 V + 1)
};

/// Mode and momentum bookkeeping for the full wavelet basis (the truncation
/// flag of `cfg` is ignored).
inline ResourceReport resource_estimate(const FieldConfig& cfg, int d) {
  if (d < 1 || d > 3) throw std::invalid_argument(fmt::format("dimension d={} not in [1, 3]", d));
  FieldConfig full = cfg;
  full.truncation = Truncation::full;
  full.validate();

  ResourceReport r;
  r.dimension = d;
  const std::int64_t per_axis = full.mode_count();
  r.lattice_sites = static_cast<std::int64_t>(full.L) << full.l_max;
  r.modes = 1;
  r.lattice_modes = 1;
  for (int i = 0; i < d; ++i) {
    r.modes *= per_axis;
    r.lattice_modes *= r.lattice_sites;
  }
  r.max_momentum = max_momentum(full.l_max);
  const double v = static_cast<double>(r.modes);
  r.nnz_bound = 10.0 * v * (std::log2(v) + 1.0);
  if (d == 1) r.nnz = assemble_coupling(full).nnz();
  return r;
}

}  // namespace wqft
