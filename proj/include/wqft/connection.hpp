#pragma once

#include <array>
#include <cstdlib>

#include <Eigen/Dense>

#include "wqft/cascade.hpp"
#include "wqft/error.hpp"
#include "wqft/filters.hpp"

namespace wqft {

/// One-sided band of a translation-invariant overlap, entries m = 0 .. 4.
using Band = std::array<double, 5>;

inline constexpr int kBandHalfWidth = 4;

/// Overlap bands between base-scale translates.
///
///   d0[m]  = int s'(x) s'(x-m) dx     (even in m)
///   p0[m]  = int s(x)  s'(x-m) dx     (odd in m)
///   p00[m] = int w(x)  w'(x-m) dx     (odd in m)
///
/// All three vanish for |m| > 4.
struct ConnectionTables {
  Band d0{};
  Band p0{};
  Band p00{};

  double d0_at(int m) const {
    return std::abs(m) > kBandHalfWidth ? 0.0 : d0[std::abs(m)];
  }
  double p0_at(int m) const { return odd_at(p0, m); }
  double p00_at(int m) const { return odd_at(p00, m); }

 private:
  static double odd_at(const Band& b, int m) {
    if (std::abs(m) > kBandHalfWidth) return 0.0;
    return m >= 0 ? b[m] : -b[-m];
  }
};

/// Which D^0 band feeds the coupling matrix.
enum class D0Source {
  refinement,  ///< solved from the refinement equation (exact to rounding)
  published,   ///< the ten-digit values as printed
};

/// The tables as published, digits verbatim.
inline ConnectionTables published_tables() {
  ConnectionTables t;
  t.d0 = {5.2576013450, -3.3828986455, 0.87333354692, -0.11139112377,
          -5.3243362257e-3};
  t.p0 = {0.0, 0.745203, -0.145203, 0.014612, 0.000342};
  t.p00 = {0.0, -1.32599, 0.146573, -0.014612, -0.000342};
  return t;
}

namespace detail {

// Full band b(m), m = -4..4, solving
//   b(m) = scale * sum_{k,k'} c_k c_k' b(2m + k' - k)
// with sum_m m^moment_power b(m) = moment_value.
inline std::array<double, 9> solve_refinement_band(const std::vector<double>& h,
                                                   double scale,
                                                   int moment_power,
                                                   double moment_value) {
  constexpr int w = kBandHalfWidth;
  constexpr int n = 2 * w + 1;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n + 1, n);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + 1);
  for (int m = -w; m <= w; ++m) {
    a(m + w, m + w) -= 1.0;
    for (std::size_t k = 0; k < h.size(); ++k) {
      for (std::size_t kp = 0; kp < h.size(); ++kp) {
        const int t = 2 * m + static_cast<int>(kp) - static_cast<int>(k);
        if (t >= -w && t <= w) a(m + w, t + w) += scale * h[k] * h[kp];
      }
    }
    a(n, m + w) = std::pow(static_cast<double>(m), moment_power);
  }
  rhs(n) = moment_value;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  if (qr.rank() < n) {
    throw NoConvergenceError("connection-coefficient system is rank deficient");
  }
  const Eigen::VectorXd x = qr.solve(rhs);
  if ((a * x - rhs).norm() > 1e-10) {
    throw NoConvergenceError("connection-coefficient system has no consistent solution");
  }
  std::array<double, 9> out{};
  for (int i = 0; i < n; ++i) out[i] = x(i);
  return out;
}

inline Band one_sided(const std::array<double, 9>& full) {
  return {full[4], full[5], full[6], full[7], full[8]};
}

}  // namespace detail

/// Tables solved from the two-scale relation. The derivative band uses
///   sum_m m^2 D(m) = -2   and the momentum band  sum_m m P(m) = 1,
/// both following from polynomial reproduction of the scaling functions.
inline ConnectionTables refinement_tables(const FilterPair& f) {
  ConnectionTables t;
  t.d0 = detail::one_sided(detail::solve_refinement_band(f.h, 4.0, 2, -2.0));
  const auto p_full = detail::solve_refinement_band(f.h, 2.0, 1, 1.0);
  t.p0 = detail::one_sided(p_full);
  // exact odd/even parity; the solver leaves ~1e-16 residue at m = 0
  t.p0[0] = 0.0;

  // int w(x) w'(x-m) dx = 2 sum_{k,k'} g_k g_k' P(2m + k' - k)
  for (int m = 0; m <= kBandHalfWidth; ++m) {
    double acc = 0.0;
    for (std::size_t k = 0; k < f.g.size(); ++k) {
      for (std::size_t kp = 0; kp < f.g.size(); ++kp) {
        const int s = 2 * m + static_cast<int>(kp) - static_cast<int>(k);
        if (std::abs(s) <= kBandHalfWidth) acc += 2.0 * f.g[k] * f.g[kp] * p_full[s + 4];
      }
    }
    t.p00[m] = acc;
  }
  t.p00[0] = 0.0;
  return t;
}

inline const ConnectionTables& default_refinement_tables() {
  static const ConnectionTables tables = refinement_tables(daubechies_filters(3));
  return tables;
}

/// Quadrature estimates from cascade samples (extrapolated trapezoid).
inline ConnectionTables quadrature_tables(const DyadicSamples& samples) {
  if (samples.depth < 3) {
    throw std::invalid_argument("quadrature tables need cascade depth >= 3");
  }
  ConnectionTables t;
  const std::size_t pu = samples.per_unit();
  for (int m = 0; m <= kBandHalfWidth; ++m) {
    t.d0[m] = extrapolated_overlap(samples.deriv_s, samples.deriv_s, m, pu);
    t.p0[m] = extrapolated_overlap(samples.values_s, samples.deriv_s, m, pu);
    t.p00[m] = extrapolated_overlap(samples.values_w, samples.deriv_w, m, pu);
  }
  return t;
}

struct D0Estimate {
  Band published;   ///< canonical printed band
  Band quadrature;  ///< independent estimate from cascade derivatives
};

/// Published D^0 band together with its quadrature cross-check.
inline D0Estimate connection_d0(int depth = 12) {
  const auto samples = cascade_evaluate(daubechies_filters(3), depth);
  return {published_tables().d0, quadrature_tables(samples).d0};
}

/// Published momentum bands P^0 and P^{0,0}.
inline ConnectionTables connection_p() { return published_tables(); }

inline Band d0_band(D0Source source) {
  return source == D0Source::published ? published_tables().d0
                                       : default_refinement_tables().d0;
}

}  // namespace wqft
