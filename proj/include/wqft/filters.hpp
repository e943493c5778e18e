#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include <fmt/format.h>

#include "wqft/error.hpp"

namespace wqft {

/// Low-pass / high-pass refinement coefficients of a Daubechies family.
///
/// `h` solves the two-scale relation s(x) = sqrt(2) sum_n h_n s(2x - n) and
/// `g` is its reverse-alternate partner, g_n = (-1)^n h_{2K-1-n}.
struct FilterPair {
  int order = 0;
  std::vector<double> h;
  std::vector<double> g;

  std::size_t size() const { return h.size(); }
  /// Width of the support [0, 2K-1] of the scaling function.
  int support_width() const { return 2 * order - 1; }
};

/// g_n = (-1)^n h_{2K-1-n}.
inline std::vector<double> high_pass_from(const std::vector<double>& h) {
  const std::size_t n = h.size();
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double sign = (i % 2 == 0) ? 1.0 : -1.0;
    g[i] = sign * h[n - 1 - i];
  }
  return g;
}

/// Closed-form Daubechies filters. Only K = 3 is available.
inline FilterPair daubechies_filters(int order) {
  if (order != 3) {
    throw UnsupportedOrderError(
        fmt::format("Daubechies order K={} is not supported (only K=3)", order));
  }
  const double r10 = std::sqrt(10.0);
  const double q = std::sqrt(5.0 + 2.0 * r10);
  const double norm = 1.0 / (16.0 * std::sqrt(2.0));

  FilterPair f;
  f.order = 3;
  f.h = {
      norm * (1.0 + r10 + q),
      norm * (5.0 + r10 + 3.0 * q),
      norm * (10.0 - 2.0 * r10 + 2.0 * q),
      norm * (10.0 - 2.0 * r10 - 2.0 * q),
      norm * (5.0 + r10 - 3.0 * q),
      norm * (1.0 + r10 - q),
  };
  f.g = high_pass_from(f.h);
  return f;
}

}  // namespace wqft
