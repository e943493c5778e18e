#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <vector>

#include <fmt/format.h>
#include <unsupported/Eigen/FFT>

#include "wqft/cascade.hpp"
#include "wqft/error.hpp"
#include "wqft/field_config.hpp"
#include "wqft/filters.hpp"

namespace wqft {

struct VarianceOptions {
  int depth = 10;         ///< cascade depth of the sampled basis function
  int fft_log2 = 18;      ///< zero-padded transform length 2^fft_log2
  /// Infrared mass used in omega for the nu integral only; required for the
  /// massless scale function.
  std::optional<double> ir_regulator;
};

struct ModeVariances {
  double nu = 0.0;   ///< <G| Phi Phi |G>
  double eta = 0.0;  ///< <G| Pi Pi |G>
};

/// Continuum vacuum second moments of the field projected onto one basis
/// function:
///   nu  = int dp/2pi |f^(p)|^2 / (2 omega(p)),
///   eta = int dp/2pi |f^(p)|^2 omega(p) / 2,   omega = sqrt(m0^2 + p^2),
/// with f^ the transform of the level-`level` scale or wavelet function.
inline ModeVariances vacuum_mode_variances(ModeKind kind, int level, double m0,
                                           const VarianceOptions& opt = {}) {
  if (level < 0) throw std::invalid_argument("level must be >= 0");
  if (!(m0 >= 0.0)) throw std::invalid_argument("mass must be >= 0");
  if (opt.fft_log2 < 8 || opt.fft_log2 > 24) {
    throw std::invalid_argument("fft_log2 out of range [8, 24]");
  }
  const double ir = opt.ir_regulator.value_or(m0);
  if (kind == ModeKind::scale && !(ir > 0.0)) {
    throw RegulatorRequiredError(
        "massless nu of the scale function diverges; supply an infrared regulator");
  }
  if (opt.ir_regulator && *opt.ir_regulator < 0.0) {
    throw std::invalid_argument("infrared regulator must be >= 0");
  }

  const auto samples = cascade_evaluate(daubechies_filters(3), opt.depth);
  const auto& f = kind == ModeKind::scale ? samples.values_s : samples.values_w;
  const std::size_t m = std::size_t{1} << opt.fft_log2;
  if (f.size() > m) throw std::invalid_argument("transform shorter than the samples");

  std::vector<std::complex<double>> in(m, {0.0, 0.0});
  for (std::size_t i = 0; i < f.size(); ++i) in[i] = f[i];
  std::vector<std::complex<double>> out;
  Eigen::FFT<double> fft;
  fft.fwd(out, in);

  const double h = samples.spacing();
  const double dq = 2.0 * std::numbers::pi / (static_cast<double>(m) * h);
  const double scale = std::ldexp(1.0, level);
  ModeVariances v;
  for (std::size_t k = 0; k < m; ++k) {
    // signed frequency index
    const double kk = k < m / 2 ? static_cast<double>(k)
                                : static_cast<double>(k) - static_cast<double>(m);
    const double p = scale * kk * dq;
    const double weight = std::norm(out[k]) * h * h;
    const double omega = std::hypot(m0, p);
    const double omega_ir = std::hypot(ir, p);
    v.eta += weight * omega / 2.0;
    if (omega_ir > 0.0) v.nu += weight / (2.0 * omega_ir);
  }
  v.nu *= dq / (2.0 * std::numbers::pi);
  v.eta *= dq / (2.0 * std::numbers::pi);
  return v;
}

enum class GammaMode {
  matched,        ///< sqrt(eta / nu): the ladder operators of a mode with these moments
  quadratic_root,  ///< (1 + sqrt(1 - 4 nu eta)) / (2 nu)
};

inline double gamma_coefficient(double nu, double eta, GammaMode mode = GammaMode::matched) {
  if (!(nu > 0.0) || !(eta > 0.0)) {
    throw std::invalid_argument(fmt::format("need nu, eta > 0 (got {}, {})", nu, eta));
  }
  if (mode == GammaMode::matched) return std::sqrt(eta / nu);
  const double radicand = 1.0 - 4.0 * nu * eta;
  if (radicand < 0.0) {
    throw NegativeRadicandError(
        fmt::format("1 - 4 nu eta = {:.6g} < 0; use the matched definition", radicand));
  }
  return (1.0 + std::sqrt(radicand)) / (2.0 * nu);
}

}  // namespace wqft
