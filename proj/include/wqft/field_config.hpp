#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <fmt/format.h>

#include "wqft/connection.hpp"
#include "wqft/error.hpp"

namespace wqft {

enum class Truncation {
  full,        ///< scale modes plus wavelet levels 0 .. l_max
  scale_only,  ///< renormalized description: the K_ss block alone
};

inline std::string_view to_string(Truncation t) {
  return t == Truncation::full ? "full" : "scale-only";
}

inline Truncation parse_truncation(std::string_view s) {
  if (s == "full") return Truncation::full;
  if (s == "scale-only" || s == "scale_only") return Truncation::scale_only;
  throw ParseError(fmt::format("unknown truncation '{}'", s));
}

/// Lattice of L base-scale cells (a = 1) with hard walls.
struct FieldConfig {
  int L = 100;
  int l_max = 0;
  double m0 = 0.0;
  Truncation truncation = Truncation::full;
  D0Source d0_source = D0Source::refinement;

  /// Number of modes kept: L 2^{l_max+1}, or L for the scale-only truncation.
  std::int64_t mode_count() const {
    if (truncation == Truncation::scale_only) return L;
    return static_cast<std::int64_t>(L) << (l_max + 1);
  }

  /// Number of wavelet levels present.
  int wavelet_levels() const {
    return truncation == Truncation::scale_only ? 0 : l_max + 1;
  }

  void validate() const {
    if (L < 10) {
      throw std::invalid_argument(
          fmt::format("L={} too small: need L >= 10 for an interior scale function", L));
    }
    if (l_max < 0 || l_max > 12) {
      throw std::invalid_argument(fmt::format("l_max={} out of range [0, 12]", l_max));
    }
    if (!(m0 >= 0.0) || !std::isfinite(m0)) {
      throw std::invalid_argument(fmt::format("mass m0={} must be finite and >= 0", m0));
    }
  }
};

enum class ModeKind { scale, wavelet };

/// A scale mode (level 0) or a wavelet mode at `level`, translate `translate`.
struct ModeIndex {
  ModeKind kind = ModeKind::scale;
  int level = 0;
  int translate = 0;

  auto operator<=>(const ModeIndex&) const = default;
};

inline ModeIndex scale_mode(int n) { return {ModeKind::scale, 0, n}; }
inline ModeIndex wavelet_mode(int level, int n) { return {ModeKind::wavelet, level, n}; }

/// First flat index of wavelet level l: L 2^l.
inline std::int64_t level_offset(const FieldConfig& cfg, int level) {
  return static_cast<std::int64_t>(cfg.L) << level;
}

inline std::int64_t flat_index(const FieldConfig& cfg, const ModeIndex& m) {
  if (m.kind == ModeKind::scale) {
    if (m.level != 0 || m.translate < 0 || m.translate >= cfg.L) {
      throw std::out_of_range(fmt::format("scale mode n={} outside [0, {})", m.translate, cfg.L));
    }
    return m.translate;
  }
  if (m.level < 0 || m.level >= cfg.wavelet_levels()) {
    throw std::out_of_range(fmt::format("wavelet level {} not present", m.level));
  }
  const std::int64_t width = level_offset(cfg, m.level);
  if (m.translate < 0 || m.translate >= width) {
    throw std::out_of_range(
        fmt::format("wavelet translate {} outside [0, {}) at level {}", m.translate, width, m.level));
  }
  return width + m.translate;
}

inline ModeIndex mode_at(const FieldConfig& cfg, std::int64_t flat) {
  if (flat < 0 || flat >= cfg.mode_count()) {
    throw std::out_of_range(fmt::format("flat index {} outside [0, {})", flat, cfg.mode_count()));
  }
  if (flat < cfg.L) return scale_mode(static_cast<int>(flat));
  // level l occupies [L 2^l, L 2^{l+1})
  int level = 0;
  while (level_offset(cfg, level + 1) <= flat) ++level;
  return wavelet_mode(level, static_cast<int>(flat - level_offset(cfg, level)));
}

}  // namespace wqft
