#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include <fmt/format.h>

#include "wqft/correlator.hpp"
#include "wqft/coupling.hpp"
#include "wqft/error.hpp"
#include "wqft/field_config.hpp"
#include "wqft/fit.hpp"
#include "wqft/gaussian.hpp"
#include "wqft/linalg.hpp"
#include "wqft/preparation.hpp"
#include "wqft/region.hpp"

namespace wqft {

enum class Basis { wavelet, discrete };

inline std::string_view to_string(Basis b) { return b == Basis::wavelet ? "wavelet" : "discrete"; }

inline Basis parse_basis(std::string_view s) {
  if (s == "wavelet") return Basis::wavelet;
  if (s == "discrete") return Basis::discrete;
  throw ParseError(fmt::format("basis must be 'wavelet' or 'discrete', got '{}'", s));
}

struct ScanConfig {
  FieldConfig field;
  std::vector<double> ell_grid;
  LogBase log_base = LogBase::e;
  Basis basis = Basis::wavelet;

  void validate() const {
    field.validate();
    for (std::size_t i = 0; i < ell_grid.size(); ++i) {
      if (!(ell_grid[i] > 0.0) || ell_grid[i] > field.L) {
        throw std::invalid_argument(
            fmt::format("ell={} outside (0, L={}]", ell_grid[i], field.L));
      }
      if (i > 0 && !(ell_grid[i] > ell_grid[i - 1])) {
        throw std::invalid_argument("ell grid must be strictly increasing");
      }
    }
  }
};

/// Integer grid lo, lo+step, ... up to hi inclusive.
inline std::vector<double> integer_grid(int lo, int hi, int step) {
  if (step <= 0 || hi < lo) throw std::invalid_argument("grid needs step > 0 and hi >= lo");
  std::vector<double> out;
  for (int v = lo; v <= hi; v += step) out.push_back(v);
  return out;
}

/// Ground state of one configuration with the diagnostics the drivers report.
struct GroundState {
  FieldConfig config;
  CouplingMatrix coupling;
  CovarianceMatrix covariance;
  std::size_t floored = 0;
  std::vector<std::string> warnings;
};

inline std::vector<std::string> floor_warnings(std::size_t floored) {
  if (floored == 0) return {};
  return {fmt::format("{} coupling eigenvalue(s) below 1e-12*max were floored", floored)};
}

inline GroundState ground_state(const FieldConfig& cfg) {
  cfg.validate();
  CouplingMatrix k = assemble_coupling(cfg);
  SpectralDecomposition spectral(k);
  CovarianceMatrix gamma = ground_covariance(spectral);
  GroundState out{cfg, std::move(k), std::move(gamma), spectral.floored(), {}};
  out.warnings = floor_warnings(out.floored);
  return out;
}

/// Entropy of the block [0, ell); `complement` takes the rest of the system.
inline double region_entropy(const GroundState& state, double ell, LogBase base = LogBase::e,
                             bool complement_region = false) {
  auto idx = flat_indices(state.config, region_modes(state.config, RegionSpec{ell}));
  if (complement_region) idx = complement(state.covariance.modes(), idx);
  if (idx.empty()) throw EmptyRegionError("complement region is empty");
  return entropy(symplectic_eigenvalues(state.covariance, idx), base);
}

struct EntropyRow {
  double ell = 0.0;
  std::size_t region_modes = 0;
  double entropy = 0.0;
};

struct EntropyScan {
  std::vector<EntropyRow> rows;
  Eigen::Index modes = 0;
  std::vector<std::string> warnings;
};

inline EntropyScan entropy_scan(const ScanConfig& scan) {
  scan.validate();
  if (scan.basis != Basis::wavelet) {
    throw std::invalid_argument("entropy scans are defined for the wavelet basis only");
  }
  const GroundState state = ground_state(scan.field);
  EntropyScan out;
  out.modes = state.covariance.modes();
  out.warnings = state.warnings;
  for (const double ell : scan.ell_grid) {
    const auto idx = flat_indices(state.config, region_modes(state.config, RegionSpec{ell}));
    const double s = entropy(symplectic_eigenvalues(state.covariance, idx), scan.log_base);
    out.rows.push_back({ell, idx.size(), s});
  }
  return out;
}

inline Window default_entropy_window(int L) { return {10.0, L / 10.0}; }
inline Window default_correlator_window() { return {5.0, 50.0}; }

struct CorrelatorRow {
  int n = 0;
  double distance = 0.0;
  double value = 0.0;
};

struct CorrelatorScan {
  std::vector<CorrelatorRow> rows;
  int reference = 0;
  Eigen::Index modes = 0;
  std::vector<std::string> warnings;
};

/// <Phi(L/2) Phi(n)> for n = 1..L/2-1 between base-level modes, in the wavelet
/// basis of `scan.field` or in the nearest-neighbour lattice with N = L sites.
inline CorrelatorScan correlator_scan(const ScanConfig& scan) {
  scan.field.validate();
  const int L = scan.field.L;
  CorrelatorScan out;
  out.reference = L / 2;
  CouplingMatrix k = scan.basis == Basis::wavelet ? assemble_coupling(scan.field)
                                                  : assemble_discrete_coupling(L, scan.field.m0);
  SpectralDecomposition spectral(k);
  out.modes = k.dim();
  out.warnings = floor_warnings(spectral.floored());
  const CovarianceMatrix gamma = ground_covariance(spectral);
  for (int n = 1; n < L / 2; ++n) {
    out.rows.push_back({n, static_cast<double>(std::abs(n - out.reference)),
                        two_point_correlator(gamma, out.reference, n)});
  }
  return out;
}

inline FitResult fit_correlator(const CorrelatorScan& scan, Window window) {
  std::vector<double> d, c;
  for (const auto& r : scan.rows) {
    d.push_back(r.distance);
    c.push_back(r.value);
  }
  return fit_correlator(d, c, window);
}

inline FitResult fit_central_charge(const EntropyScan& scan, double L, Window window,
                                    LogBase base) {
  std::vector<double> ell, s;
  const double to_nats = base == LogBase::two ? std::numbers::ln2 : 1.0;
  for (const auto& r : scan.rows) {
    ell.push_back(r.ell);
    s.push_back(r.entropy * to_nats);
  }
  return fit_central_charge(ell, s, L, window);
}

struct DecomposeReport {
  Eigen::Index modes = 0;
  std::size_t squeeze_count = 0;
  double r_min = 0.0;
  double r_max = 0.0;
  double r_mean = 0.0;
  double symplectic_residual = 0.0;
  double covariance_residual = 0.0;
  double factorization_residual = 0.0;
  double eigenvalue_residual = 0.0;  ///< max |lambda_j - e^{-4 r_j}|
  std::vector<double> squeezing;
  std::vector<std::string> warnings;
};

inline DecomposeReport decompose_report(const CouplingMatrix& k) {
  SpectralDecomposition spectral(k);
  const SymplecticPreparation prep = symplectic_preparation(spectral);
  const CovarianceMatrix gamma = ground_covariance(spectral);
  const Eigen::MatrixXd y = prep.dense();

  DecomposeReport out;
  out.modes = prep.modes();
  out.squeeze_count = static_cast<std::size_t>(prep.squeezing.size());
  out.r_min = prep.squeezing.minCoeff();
  out.r_max = prep.squeezing.maxCoeff();
  out.r_mean = prep.squeezing.mean();
  out.symplectic_residual = symplectic_residual(y);
  out.covariance_residual = covariance_residual(y, gamma);
  out.factorization_residual = factorization_residual(prep);
  for (Eigen::Index j = 0; j < prep.squeezing.size(); ++j) {
    const double lam = std::exp(-4.0 * prep.squeezing(j));
    out.eigenvalue_residual =
        std::max(out.eigenvalue_residual, std::abs(lam - prep.eigenvalues(j)));
    out.squeezing.push_back(prep.squeezing(j));
  }
  out.warnings = floor_warnings(spectral.floored());
  return out;
}

inline DecomposeReport decompose_report(const FieldConfig& cfg) {
  cfg.validate();
  return decompose_report(assemble_coupling(cfg));
}

}  // namespace wqft
