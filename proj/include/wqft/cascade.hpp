#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include "wqft/error.hpp"
#include "wqft/filters.hpp"

namespace wqft {

/// Samples of s, w and their first derivatives on the dyadic grid
/// x_j = j * 2^-depth, j = 0 .. (2K-1) * 2^depth, covering the support.
struct DyadicSamples {
  int depth = 0;
  int support_width = 0;
  std::vector<double> values_s;
  std::vector<double> values_w;
  std::vector<double> deriv_s;
  std::vector<double> deriv_w;

  std::size_t per_unit() const { return std::size_t{1} << depth; }
  double spacing() const { return std::ldexp(1.0, -depth); }
  std::size_t size() const { return values_s.size(); }
  double x(std::size_t j) const { return static_cast<double>(j) * spacing(); }
};

namespace detail {

// Integer-point values of s (target 1) or s' (target 1/2) from the
// eigenproblem v_i = sqrt(2) sum_k h_k v_{2i-k}, i = 1 .. 2K-2.
inline std::vector<double> integer_point_values(const FilterPair& f,
                                                double target) {
  const int width = f.support_width();
  const int n = width - 1;
  if (n < 1) {
    throw NoConvergenceError("filter too short for a cascade evaluation");
  }
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i <= n; ++i) {
    for (int k = 0; k < static_cast<int>(f.size()); ++k) {
      const int j = 2 * i - k;
      if (j >= 1 && j <= n) m(i - 1, j - 1) += std::sqrt(2.0) * f.h[k];
    }
  }
  Eigen::EigenSolver<Eigen::MatrixXd> es(m);
  if (es.info() != Eigen::Success) {
    throw NoConvergenceError("integer-point eigenproblem did not converge");
  }
  int hit = -1;
  int near = 0;
  for (int i = 0; i < n; ++i) {
    const auto lambda = es.eigenvalues()(i);
    const double dist = std::abs(lambda - std::complex<double>(target, 0.0));
    if (dist < 1e-8) {
      hit = i;
      ++near;
    } else if (dist < 1e-6) {
      ++near;
    }
  }
  if (hit < 0 || near != 1) {
    throw NoConvergenceError(fmt::format(
        "refinement operator has no simple eigenvalue {} at integer points",
        target));
  }
  Eigen::VectorXd v = es.eigenvectors().col(hit).real();
  std::vector<double> out(static_cast<std::size_t>(width) + 1, 0.0);
  if (target == 1.0) {
    // partition of unity: sum_n s(n) = 1
    const double sum = v.sum();
    for (int i = 1; i <= n; ++i) out[i] = v(i - 1) / sum;
  } else {
    // differentiated first-moment relation: sum_n n s'(n) = -1
    double moment = 0.0;
    for (int i = 1; i <= n; ++i) moment += i * v(i - 1);
    for (int i = 1; i <= n; ++i) out[i] = -v(i - 1) / moment;
  }
  return out;
}

// Fill the dyadic grid from integer points by repeated use of
// f(x) = scale * sum_k c_k f(2x - k).
inline std::vector<double> refine_to_depth(const std::vector<double>& integer_values,
                                           std::span<const double> coeffs,
                                           double scale, int width, int depth) {
  const std::size_t per_unit = std::size_t{1} << depth;
  const std::size_t last = static_cast<std::size_t>(width) * per_unit;
  std::vector<double> f(last + 1, 0.0);
  for (int i = 0; i <= width; ++i) f[i * per_unit] = integer_values[i];
  for (int d = 1; d <= depth; ++d) {
    const std::size_t step = std::size_t{1} << (depth - d);
    for (std::size_t i = step; i < last; i += 2 * step) {
      double acc = 0.0;
      for (std::size_t k = 0; k < coeffs.size(); ++k) {
        const long long j = 2LL * static_cast<long long>(i) -
                            static_cast<long long>(k * per_unit);
        if (j >= 0 && j <= static_cast<long long>(last)) acc += coeffs[k] * f[j];
      }
      f[i] = scale * acc;
    }
  }
  return f;
}

// w(x) = scale * sum_k g_k f(2x - k), sampled on the same grid as f.
inline std::vector<double> apply_two_scale(const std::vector<double>& f,
                                           std::span<const double> coeffs,
                                           double scale, std::size_t per_unit) {
  const long long last = static_cast<long long>(f.size()) - 1;
  std::vector<double> w(f.size(), 0.0);
  for (long long i = 0; i <= last; ++i) {
    double acc = 0.0;
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      const long long j = 2 * i - static_cast<long long>(k * per_unit);
      if (j >= 0 && j <= last) acc += coeffs[k] * f[j];
    }
    w[i] = scale * acc;
  }
  return w;
}

}  // namespace detail

/// Cascade evaluation of the scaling function, wavelet and their first
/// derivatives on a dyadic grid of spacing 2^-depth.
inline DyadicSamples cascade_evaluate(const FilterPair& f, int depth) {
  if (depth < 1 || depth > 16) {
    throw std::invalid_argument(
        fmt::format("cascade depth must be in [1, 16], got {}", depth));
  }
  if (f.h.size() != f.g.size() ||
      f.h.size() != static_cast<std::size_t>(2 * f.order)) {
    throw std::invalid_argument("filter pair must hold 2K low- and high-pass taps");
  }
  const int width = f.support_width();
  const double r2 = std::sqrt(2.0);

  DyadicSamples out;
  out.depth = depth;
  out.support_width = width;
  out.values_s = detail::refine_to_depth(detail::integer_point_values(f, 1.0),
                                         f.h, r2, width, depth);
  out.deriv_s = detail::refine_to_depth(detail::integer_point_values(f, 0.5),
                                        f.h, 2.0 * r2, width, depth);
  out.values_w = detail::apply_two_scale(out.values_s, f.g, r2, out.per_unit());
  out.deriv_w = detail::apply_two_scale(out.deriv_s, f.g, 2.0 * r2, out.per_unit());
  return out;
}

/// Trapezoid rule on uniform samples.
inline double trapezoid(std::span<const double> y, double h) {
  if (y.size() < 2) return 0.0;
  double acc = 0.5 * (y.front() + y.back());
  for (std::size_t i = 1; i + 1 < y.size(); ++i) acc += y[i];
  return acc * h;
}

/// Trapezoid estimate of  int a(x) b(x - shift) dx  for two functions sampled
/// on the same support grid, using every `stride`-th sample.
inline double shifted_overlap(std::span<const double> a, std::span<const double> b,
                              int shift, std::size_t per_unit,
                              std::size_t stride = 1) {
  const long long offset = static_cast<long long>(shift) *
                           static_cast<long long>(per_unit);
  const long long n = static_cast<long long>(a.size());
  const long long nb = static_cast<long long>(b.size());
  double acc = 0.0;
  for (long long i = 0; i < n; i += static_cast<long long>(stride)) {
    const long long j = i - offset;
    if (j < 0 || j >= nb) continue;
    // both ends of each support carry zero samples, so the half-weights of
    // the trapezoid rule only ever multiply zeros
    acc += a[i] * b[j];
  }
  return acc * static_cast<double>(stride) / static_cast<double>(per_unit);
}

/// Aitken delta-squared extrapolation of three successive estimates.
inline double aitken(double coarse, double mid, double fine) {
  const double d1 = mid - coarse;
  const double d2 = fine - mid;
  const double denom = d2 - d1;
  if (std::abs(d2) <= 1e-15 * std::max(1.0, std::abs(fine)) ||
      std::abs(denom) < 1e-300) {
    return fine;
  }
  return fine - d2 * d2 / denom;
}

/// Shifted overlap extrapolated from the stride-4, -2, -1 sub-grids of the
/// same samples. The trapezoid error of these piecewise-Holder integrands is
/// geometric in the depth, which the extrapolation removes.
inline double extrapolated_overlap(std::span<const double> a,
                                   std::span<const double> b, int shift,
                                   std::size_t per_unit) {
  const double q4 = shifted_overlap(a, b, shift, per_unit, 4);
  const double q2 = shifted_overlap(a, b, shift, per_unit, 2);
  const double q1 = shifted_overlap(a, b, shift, per_unit, 1);
  return aitken(q4, q2, q1);
}

}  // namespace wqft
