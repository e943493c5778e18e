#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include "wqft/coupling.hpp"
#include "wqft/error.hpp"
#include "wqft/linalg.hpp"

namespace wqft {

/// Second moments of a Gaussian state in the ordering (q_1..q_V, p_1..p_V),
/// with hbar = 1 so the vacuum is 1/2 I. Stored as blocks; an empty `qp`
/// block means the q-p correlations vanish.
class CovarianceMatrix {
 public:
  CovarianceMatrix(Eigen::MatrixXd qq, Eigen::MatrixXd pp, Eigen::MatrixXd qp = {})
      : qq_(std::move(qq)), pp_(std::move(pp)), qp_(std::move(qp)) {
    if (qq_.rows() != qq_.cols() || pp_.rows() != pp_.cols() || qq_.rows() != pp_.rows()) {
      throw DimensionError("covariance blocks must be square and of equal size");
    }
    if (qp_.size() != 0 && (qp_.rows() != qq_.rows() || qp_.cols() != qq_.rows())) {
      throw DimensionError("q-p covariance block has the wrong shape");
    }
  }

  static CovarianceMatrix from_dense(const Eigen::MatrixXd& gamma) {
    if (gamma.rows() != gamma.cols() || gamma.rows() % 2 != 0) {
      throw DimensionError("covariance matrix must be 2V x 2V");
    }
    const Eigen::Index v = gamma.rows() / 2;
    Eigen::MatrixXd qp = gamma.topRightCorner(v, v);
    if (qp.cwiseAbs().maxCoeff() == 0.0) qp.resize(0, 0);
    return {gamma.topLeftCorner(v, v), gamma.bottomRightCorner(v, v), std::move(qp)};
  }

  Eigen::Index modes() const { return qq_.rows(); }
  const Eigen::MatrixXd& qq() const { return qq_; }
  const Eigen::MatrixXd& pp() const { return pp_; }
  bool block_diagonal() const { return qp_.size() == 0; }
  /// q-p block; zero when block diagonal.
  Eigen::MatrixXd qp() const {
    return block_diagonal() ? Eigen::MatrixXd::Zero(modes(), modes()) : qp_;
  }

  Eigen::MatrixXd dense() const {
    const Eigen::Index v = modes();
    Eigen::MatrixXd g(2 * v, 2 * v);
    g.topLeftCorner(v, v) = qq_;
    g.bottomRightCorner(v, v) = pp_;
    const Eigen::MatrixXd x = qp();
    g.topRightCorner(v, v) = x;
    g.bottomLeftCorner(v, v) = x.transpose();
    return g;
  }

 private:
  Eigen::MatrixXd qq_;
  Eigen::MatrixXd pp_;
  Eigen::MatrixXd qp_;
};

/// Omega = [[0, I], [-I, 0]] for n modes.
inline Eigen::MatrixXd symplectic_form(Eigen::Index n) {
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  omega.topRightCorner(n, n).setIdentity();
  omega.bottomLeftCorner(n, n) = -Eigen::MatrixXd::Identity(n, n);
  return omega;
}

/// Ground state of H = 1/2 (p^T p + q^T K q): Gamma = 1/2 diag(K^{-1/2}, K^{1/2}).
inline CovarianceMatrix ground_covariance(const SpectralDecomposition& spectral) {
  return {0.5 * spectral.power(-0.5), 0.5 * spectral.power(0.5)};
}

inline CovarianceMatrix ground_covariance(const CouplingMatrix& k) {
  return ground_covariance(SpectralDecomposition(k));
}

/// Positive symplectic eigenvalues, ascending.
struct SymplecticSpectrum {
  std::vector<double> sigma;

  std::size_t size() const { return sigma.size(); }
};

inline constexpr double kPhysicalTolerance = 1e-6;

namespace detail {

inline void check_subset(std::span<const Eigen::Index> modes, Eigen::Index total) {
  if (modes.empty()) throw EmptyRegionError("symplectic spectrum of an empty mode subset");
  std::vector<Eigen::Index> sorted(modes.begin(), modes.end());
  std::sort(sorted.begin(), sorted.end());
  if (sorted.front() < 0 || sorted.back() >= total) {
    throw std::out_of_range(fmt::format("mode index outside [0, {})", total));
  }
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("mode subset contains duplicates");
  }
}

inline Eigen::MatrixXd restrict(const Eigen::MatrixXd& m, std::span<const Eigen::Index> idx) {
  const auto n = static_cast<Eigen::Index>(idx.size());
  Eigen::MatrixXd out(n, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    for (Eigen::Index r = 0; r < n; ++r) out(r, c) = m(idx[r], idx[c]);
  }
  return out;
}

inline SymplecticSpectrum finish(std::vector<double> sigma) {
  std::sort(sigma.begin(), sigma.end());
  if (!sigma.empty() && sigma.front() < 0.5 - kPhysicalTolerance) {
    throw NonPhysicalStateError(
        fmt::format("symplectic eigenvalue {:.12g} < 1/2", sigma.front()));
  }
  return {std::move(sigma)};
}

}  // namespace detail

/// Route for states without q-p correlations: sigma_j^2 are the eigenvalues
/// of Gamma_qq Gamma_pp, obtained from the congruent symmetric matrix
/// C^T Gamma_pp C with Gamma_qq = C C^T.
inline SymplecticSpectrum symplectic_eigenvalues_block(const CovarianceMatrix& gamma,
                                                       std::span<const Eigen::Index> modes) {
  detail::check_subset(modes, gamma.modes());
  const Eigen::MatrixXd qq = detail::restrict(gamma.qq(), modes);
  const Eigen::MatrixXd pp = detail::restrict(gamma.pp(), modes);
  Eigen::LLT<Eigen::MatrixXd> llt(qq);
  if (llt.info() != Eigen::Success) {
    throw NonPhysicalStateError("Gamma_qq restricted to the subset is not positive definite");
  }
  const Eigen::MatrixXd c = llt.matrixL();
  const Eigen::MatrixXd m = c.transpose() * pp * c;
  const auto eig = symmetric_eigen(0.5 * (m + m.transpose()));
  std::vector<double> sigma(static_cast<std::size_t>(eig.values.size()));
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    sigma[i] = std::sqrt(std::max(eig.values(i), 0.0));
  }
  return detail::finish(std::move(sigma));
}

/// General route: eigenvalues of i Gamma_A Omega_A come in pairs +-sigma; the
/// positive member of each pair is kept.
inline SymplecticSpectrum symplectic_eigenvalues_general(const CovarianceMatrix& gamma,
                                                         std::span<const Eigen::Index> modes) {
  detail::check_subset(modes, gamma.modes());
  const auto n = static_cast<Eigen::Index>(modes.size());
  const Eigen::MatrixXd qp_full = gamma.qp();
  Eigen::MatrixXd ga(2 * n, 2 * n);
  ga.topLeftCorner(n, n) = detail::restrict(gamma.qq(), modes);
  ga.bottomRightCorner(n, n) = detail::restrict(gamma.pp(), modes);
  const Eigen::MatrixXd qp = detail::restrict(qp_full, modes);
  ga.topRightCorner(n, n) = qp;
  ga.bottomLeftCorner(n, n) = qp.transpose();

  const Eigen::MatrixXcd m = std::complex<double>(0.0, 1.0) * (ga * symplectic_form(n));
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, false);
  if (es.info() != Eigen::Success) {
    throw NoConvergenceError("eigensolver failed on i Gamma Omega");
  }
  std::vector<double> ev(static_cast<std::size_t>(2 * n));
  for (Eigen::Index i = 0; i < 2 * n; ++i) ev[i] = es.eigenvalues()(i).real();
  std::sort(ev.begin(), ev.end());
  // pairs +-sigma: the upper half of the sorted list
  std::vector<double> sigma(ev.begin() + n, ev.end());
  return detail::finish(std::move(sigma));
}

/// Reduced symplectic spectrum on `modes` (rows/columns of the complement
/// deleted in both sectors).
inline SymplecticSpectrum symplectic_eigenvalues(const CovarianceMatrix& gamma,
                                                 std::span<const Eigen::Index> modes) {
  return gamma.block_diagonal() ? symplectic_eigenvalues_block(gamma, modes)
                                : symplectic_eigenvalues_general(gamma, modes);
}

inline SymplecticSpectrum symplectic_eigenvalues(const CovarianceMatrix& gamma) {
  std::vector<Eigen::Index> all(static_cast<std::size_t>(gamma.modes()));
  for (Eigen::Index i = 0; i < gamma.modes(); ++i) all[i] = i;
  return symplectic_eigenvalues(gamma, all);
}

enum class LogBase { two, e };

inline std::string_view to_string(LogBase b) { return b == LogBase::two ? "2" : "e"; }

inline LogBase parse_log_base(std::string_view s) {
  if (s == "2") return LogBase::two;
  if (s == "e") return LogBase::e;
  throw ParseError(fmt::format("log base must be '2' or 'e', got '{}'", s));
}

inline constexpr double kPureTolerance = 1e-9;

/// S = sum (sigma + 1/2) log(sigma + 1/2) - (sigma - 1/2) log(sigma - 1/2).
/// A sigma within 1e-9 of 1/2 contributes exactly zero.
inline double entropy(const SymplecticSpectrum& spectrum, LogBase base = LogBase::e) {
  double s = 0.0;
  for (const double sigma : spectrum.sigma) {
    if (sigma < 0.5 - kPhysicalTolerance) {
      throw NonPhysicalStateError(fmt::format("symplectic eigenvalue {:.12g} < 1/2", sigma));
    }
    if (sigma - 0.5 <= kPureTolerance) continue;
    const double up = sigma + 0.5;
    const double down = sigma - 0.5;
    s += up * std::log(up) - down * std::log(down);
  }
  return base == LogBase::two ? s / std::numbers::ln2 : s;
}

}  // namespace wqft
