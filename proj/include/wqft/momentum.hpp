#pragma once

#include <cmath>
#include <complex>
#include <set>
#include <span>
#include <utility>

#include <fmt/format.h>

#include "wqft/connection.hpp"
#include "wqft/error.hpp"

namespace wqft {

/// Amplitude of a single-particle wavelet excitation b^{r dagger}(n)|G>.
struct WaveletAmplitude {
  int level = 0;
  int translate = 0;
  std::complex<double> alpha{};
};

/// <E|p|E> for |E> = sum alpha_{r,n} b^{r dagger}(n)|G>.
///
/// Only same-level pairs contribute (cross-level momentum bands are not
/// tabulated); each unordered pair {n, m} at level r adds
///   2^r P^{0,0}_{0,n-m} Im[alpha_n conj(alpha_m)].
inline double momentum_expectation(std::span<const WaveletAmplitude> amplitudes,
                                   const ConnectionTables& tables = published_tables()) {
  double norm = 0.0;
  std::set<std::pair<int, int>> seen;
  for (const auto& a : amplitudes) {
    if (a.level < 0) {
      throw std::invalid_argument(fmt::format("wavelet level {} must be >= 0", a.level));
    }
    if (!seen.emplace(a.level, a.translate).second) {
      throw std::invalid_argument(
          fmt::format("duplicate amplitude for level {} translate {}", a.level, a.translate));
    }
    norm += std::norm(a.alpha);
  }
  if (std::abs(norm - 1.0) > 1e-9) {
    throw NormalizationError(fmt::format("sum |alpha|^2 = {:.12g}, expected 1", norm));
  }
  double p = 0.0;
  for (std::size_t i = 0; i < amplitudes.size(); ++i) {
    for (std::size_t j = i + 1; j < amplitudes.size(); ++j) {
      const auto& a = amplitudes[i];
      const auto& b = amplitudes[j];
      if (a.level != b.level) continue;
      const double band = tables.p00_at(a.translate - b.translate);
      if (band == 0.0) continue;
      p += std::ldexp(band, a.level) * std::imag(a.alpha * std::conj(b.alpha));
    }
  }
  return p;
}

/// Largest single-particle momentum reachable at level `level`:
/// 2^{level-1} |P^{0,0}_{0,1}|, about 0.663 * 2^level.
inline double max_momentum(int level, const ConnectionTables& tables = published_tables()) {
  return std::ldexp(std::abs(tables.p00[1]), level - 1);
}

}  // namespace wqft
