#pragma once

#include <vector>

#include "qcomp/model.hpp"
#include "qcomp/sweep.hpp"

/// Spectral compensation search: the population difference P(t) = P_g - P_e
/// of the computational system, sampled commensurately with the period so
/// that nu0 = 1/T lands on a DFT bin.
namespace qcomp {

struct TimeSeries {
  double t0 = 0;
  double dt = 0;
  std::vector<double> values;
};

/// Two-sided DFT magnitudes |X_k| / N at nu = k dnu, k = 0..N-1, so that
/// sum(magnitudes^2) equals the mean square of the series.
struct Spectrum {
  double dnu = 0;
  std::vector<double> magnitudes;

  /// Index of the bin at frequency nu; throws if nu is off the grid.
  [[nodiscard]] std::size_t bin(double nu) const;
};

struct FourierOptions {
  int n_periods = 64;
  int samples_per_period = 64;
};

/// P(t_j) at t_j = t0 + j T / samples_per_period over exactly n_periods T.
TimeSeries population_difference_series(const ModelConfig& cfg, int n_periods,
                                        int samples_per_period);

/// Error-free counterpart sampled identically. One-photon models: same
/// config with eps = delta = V = 0. STIRAP: the dark-state waveform
/// cos(2 theta(t)) of perfect adiabatic following.
TimeSeries reference_series(const ModelConfig& cfg, int n_periods, int samples_per_period);

Spectrum spectrum(const TimeSeries& series);

/// 1 - |X(nu0)| / |X_ref(nu0)|. Throws DegenerateReference when the
/// reference amplitude is below 1e-9.
double peak_metric(const Spectrum& spec, const Spectrum& ref, double nu0);

double fourier_peak_metric(const ModelConfig& cfg, const FourierOptions& opts = {});

struct Sideband {
  double frequency;
  double magnitude;
};

/// The two largest local maxima in (0.5 nu0, 1.5 nu0) other than the nu0
/// bin, in ascending frequency. Empty when nothing rises above 1e-9.
std::vector<Sideband> sideband_frequencies(const Spectrum& spec, double nu0);

/// Fraction of the non-DC power outside the harmonics of nu0; zero for an
/// exactly T-periodic signal.
double off_harmonic_fraction(const Spectrum& spec, double nu0);

/// fourier_peak_metric over a parameter plane.
SweepGrid scan2d(const ModelConfig& base, const Axis& axis1, const Axis& axis2,
                 const FourierOptions& opts = {}, int jobs = 0);

}  // namespace qcomp
