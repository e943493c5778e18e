#pragma once

#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include <fmt/format.h>

#include "wqft/error.hpp"

namespace wqft {

struct Window {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double x) const { return x >= lo && x <= hi; }
};

struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  /// Central charge for entropy fits, fixed-slope constant z for correlators.
  double derived = 0.0;
  double residual = 0.0;  ///< RMS of the least-squares residuals
  Window window;
  std::size_t points = 0;
};

/// Ordinary least squares y = slope x + intercept.
inline FitResult fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("fit_line: size mismatch");
  const std::size_t n = x.size();
  if (n < 2) throw WindowTooSmallError("need at least two points for a line fit");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_line: abscissae are all equal");
  FitResult r;
  r.slope = sxy / sxx;
  r.intercept = my - r.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = y[i] - (r.slope * x[i] + r.intercept);
    ss += e * e;
  }
  r.residual = std::sqrt(ss / static_cast<double>(n));
  r.points = n;
  return r;
}

/// Abscissa of the open-boundary entropy law, (1/6) ln((2L/pi) sin(pi ell/L)).
inline double open_boundary_abscissa(double ell, double L) {
  return std::log(2.0 * L / std::numbers::pi * std::sin(std::numbers::pi * ell / L)) / 6.0;
}

/// Fit S = c x + C_open, x the open-boundary abscissa, over ell in `window`.
/// Entropies in nats.
inline FitResult fit_central_charge(std::span<const double> ell, std::span<const double> entropy,
                                    double L, Window window) {
  if (ell.size() != entropy.size()) throw std::invalid_argument("ell/entropy size mismatch");
  std::vector<double> x, y;
  for (std::size_t i = 0; i < ell.size(); ++i) {
    if (!window.contains(ell[i])) continue;
    x.push_back(open_boundary_abscissa(ell[i], L));
    y.push_back(entropy[i]);
  }
  if (x.size() < 4) {
    throw WindowTooSmallError(fmt::format(
        "central-charge window [{}, {}] holds {} points, need at least 4", window.lo,
        window.hi, x.size()));
  }
  FitResult r = fit_line(x, y);
  r.derived = r.slope;
  r.window = window;
  return r;
}

/// Fit C(d) against ln d over distances d in `window`. `slope`/`intercept`
/// come from the free fit; `derived` is the constant z of
/// C = -(1/4pi) ln(d^2) + z with the slope held at its continuum value.
inline FitResult fit_correlator(std::span<const double> distance,
                                std::span<const double> corr, Window window) {
  if (distance.size() != corr.size()) throw std::invalid_argument("distance/C size mismatch");
  std::vector<double> x, y;
  double z = 0.0;
  for (std::size_t i = 0; i < distance.size(); ++i) {
    if (!window.contains(distance[i]) || distance[i] <= 0.0) continue;
    x.push_back(std::log(distance[i]));
    y.push_back(corr[i]);
    z += corr[i] + std::log(distance[i] * distance[i]) / (4.0 * std::numbers::pi);
  }
  if (x.size() < 4) {
    throw WindowTooSmallError(fmt::format(
        "correlator window [{}, {}] holds {} points, need at least 4", window.lo, window.hi,
        x.size()));
  }
  FitResult r = fit_line(x, y);
  r.derived = z / static_cast<double>(x.size());
  r.window = window;
  return r;
}

}  // namespace wqft
