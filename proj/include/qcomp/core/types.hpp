#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qcomp {

template <typename Real>
using Complex = std::complex<Real>;

/// Column of complex probability amplitudes.
template <typename Real>
using StateVector = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, 1>;

/// Square complex matrix: Hamiltonians, propagators and density matrices.
template <typename Real>
using Operator = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

using Complexd = Complex<double>;
using StateVectord = StateVector<double>;
using Operatord = Operator<double>;

/// Stroboscopic samples at t = kT, k = 1..n. `infidelity` is accumulated
/// from the non-ground populations rather than as 1 - F, so it keeps its
/// relative precision near perfect fidelity.
struct FidelitySeries {
  double period = 0.0;
  std::vector<double> fidelity;
  std::vector<double> infidelity;

  [[nodiscard]] std::size_t size() const { return fidelity.size(); }
  [[nodiscard]] double final_fidelity() const { return fidelity.back(); }
  [[nodiscard]] double final_infidelity() const { return infidelity.back(); }
};

/// Raised when a time-dependent propagation loses more norm than allowed.
class IntegrationError : public std::runtime_error {
 public:
  explicit IntegrationError(double drift, int period = -1)
      : std::runtime_error("integration failure: norm drift " + std::to_string(drift) +
                           (period >= 0 ? " in period " + std::to_string(period) : "")),
        drift_(drift),
        period_(period) {}

  [[nodiscard]] double drift() const noexcept { return drift_; }
  /// 1-based period index, or -1 when not known.
  [[nodiscard]] int period() const noexcept { return period_; }

 private:
  double drift_;
  int period_;
};

/// Raised when the spectral reference has no weight at the probe frequency.
class DegenerateReference : public std::runtime_error {
 public:
  explicit DegenerateReference(double amplitude)
      : std::runtime_error("degenerate reference: amplitude " + std::to_string(amplitude)),
        amplitude_(amplitude) {}

  [[nodiscard]] double amplitude() const noexcept { return amplitude_; }

 private:
  double amplitude_;
};

/// Raised by the 1D minimizer when the interval does not bracket a minimum.
class SearchFailure : public std::runtime_error {
 public:
  SearchFailure(const std::string& what, double lo, double hi, double f_lo, double f_hi)
      : std::runtime_error(what), lo_(lo), hi_(hi), f_lo_(f_lo), f_hi_(f_hi) {}

  [[nodiscard]] double lo() const noexcept { return lo_; }
  [[nodiscard]] double hi() const noexcept { return hi_; }
  [[nodiscard]] double f_lo() const noexcept { return f_lo_; }
  [[nodiscard]] double f_hi() const noexcept { return f_hi_; }

 private:
  double lo_, hi_, f_lo_, f_hi_;
};

}  // namespace qcomp
