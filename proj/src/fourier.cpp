#include "qcomp/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include <unsupported/Eigen/FFT>

namespace qcomp {

namespace {

void check_sampling(int n_periods, int samples_per_period) {
  if (n_periods < 8 || n_periods > 10000)
    throw std::invalid_argument("n_periods: must be in [8, 10000] for spectra");
  if (samples_per_period < 16)
    throw std::invalid_argument("samples_per_period: must be >= 16");
}

double start_time(const ModelConfig& cfg) {
  if (const auto* s = std::get_if<stirap::StirapConfig>(&cfg)) return s->period_start();
  return 0.0;
}

// cos(2 theta) with tan(theta) = Omega_P / Omega_S, from the log ratio of the
// Gaussians so that it stays defined where both pulses underflow.
double dark_state_difference(double t, const stirap::StirapConfig& c, bool reversed) {
  const double h = c.T1 / 2.0;
  const double cp = reversed ? c.T2 - h : h;
  const double cs = reversed ? c.T2 + h : -h;
  const double xp = (t - cp) / c.TG, xs = (t - cs) / c.TG;
  const double log_ratio = xs * xs - xp * xp;
  return -std::tanh(log_ratio);
}

}  // namespace

std::size_t Spectrum::bin(double nu) const {
  const double k = nu / dnu;
  const double kr = std::round(k);
  if (!(std::abs(k - kr) <= 1e-9 * std::max(1.0, kr)) || kr < 0 ||
      kr >= static_cast<double>(magnitudes.size()))
    throw std::invalid_argument("frequency " + std::to_string(nu) + " is not on the DFT grid");
  return static_cast<std::size_t>(kr);
}

TimeSeries population_difference_series(const ModelConfig& cfg, int n_periods,
                                        int samples_per_period) {
  check_sampling(n_periods, samples_per_period);
  validate(cfg);
  const auto schedule = build_schedule(cfg);
  const PeriodicSampler<double> sampler(schedule, samples_per_period, integrator_step(cfg));
  TimeSeries out{start_time(cfg), schedule.period() / samples_per_period, {}};
  out.values.resize(static_cast<std::size_t>(n_periods) * samples_per_period);
  sampler.run(initial_state(cfg), n_periods, [&](int p, int j, const StateVectord& psi) {
    const auto o = observe(cfg, psi);
    out.values[static_cast<std::size_t>(p) * samples_per_period + j] = o.P_g - o.P_e;
  });
  return out;
}

TimeSeries reference_series(const ModelConfig& cfg, int n_periods, int samples_per_period) {
  check_sampling(n_periods, samples_per_period);
  if (const auto* s = std::get_if<stirap::StirapConfig>(&cfg)) {
    s->validate();
    const double T = s->period();
    const double w = s->half_window();
    TimeSeries out{s->period_start(), T / samples_per_period, {}};
    out.values.reserve(static_cast<std::size_t>(n_periods) * samples_per_period);
    for (int p = 0; p < n_periods; ++p) {
      for (int j = 0; j < samples_per_period; ++j) {
        const double t = s->period_start() + T * j / samples_per_period;
        // Forward block, free wait (fully transferred), reversed block.
        double v = -1.0;
        if (t <= w) v = dark_state_difference(t, *s, false);
        else if (t >= s->T2 - w) v = dark_state_difference(t, *s, true);
        out.values.push_back(v);
      }
    }
    return out;
  }
  ModelConfig ideal = cfg;
  set_parameter(ideal, "eps", 0.0);
  set_parameter(ideal, "delta_T1", 0.0);
  set_parameter(ideal, "V_T2", 0.0);
  return population_difference_series(ideal, n_periods, samples_per_period);
}

Spectrum spectrum(const TimeSeries& series) {
  const std::size_t n = series.values.size();
  if (n < 2) throw std::invalid_argument("spectrum: series needs at least 2 samples");
  if (!(series.dt > 0)) throw std::invalid_argument("spectrum: dt must be positive");
  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> x;
  fft.fwd(x, series.values);
  Spectrum s{1.0 / (static_cast<double>(n) * series.dt), std::vector<double>(n)};
  for (std::size_t k = 0; k < n; ++k) s.magnitudes[k] = std::abs(x[k]) / static_cast<double>(n);
  return s;
}

double peak_metric(const Spectrum& spec, const Spectrum& ref, double nu0) {
  if (spec.magnitudes.size() != ref.magnitudes.size() ||
      std::abs(spec.dnu - ref.dnu) > 1e-12 * ref.dnu)
    throw std::invalid_argument("peak_metric: spectrum and reference sampled differently");
  const std::size_t k = spec.bin(nu0);
  const double a_ref = ref.magnitudes[k];
  if (a_ref < 1e-9) throw DegenerateReference(a_ref);
  return 1.0 - spec.magnitudes[k] / a_ref;
}

double fourier_peak_metric(const ModelConfig& cfg, const FourierOptions& opts) {
  const auto s = spectrum(population_difference_series(cfg, opts.n_periods, opts.samples_per_period));
  const auto r = spectrum(reference_series(cfg, opts.n_periods, opts.samples_per_period));
  return peak_metric(s, r, 1.0 / period(cfg));
}

std::vector<Sideband> sideband_frequencies(const Spectrum& spec, double nu0) {
  const std::size_t k0 = spec.bin(nu0);
  const auto& m = spec.magnitudes;
  std::vector<std::size_t> peaks;
  for (std::size_t k = k0 / 2 + 1; 2 * k < 3 * k0 && k + 1 < m.size(); ++k) {
    if (k == k0 || m[k] <= 1e-9) continue;
    if (m[k] > m[k - 1] && m[k] >= m[k + 1]) peaks.push_back(k);
  }
  std::sort(peaks.begin(), peaks.end(), [&](auto a, auto b) { return m[a] > m[b]; });
  if (peaks.size() > 2) peaks.resize(2);
  std::sort(peaks.begin(), peaks.end());
  std::vector<Sideband> out;
  for (auto k : peaks) out.push_back({static_cast<double>(k) * spec.dnu, m[k]});
  return out;
}

double off_harmonic_fraction(const Spectrum& spec, double nu0) {
  const std::size_t k0 = spec.bin(nu0);
  if (k0 == 0) throw std::invalid_argument("off_harmonic_fraction: nu0 must be positive");
  double total = 0, off = 0;
  for (std::size_t k = 1; k < spec.magnitudes.size(); ++k) {
    const double p = spec.magnitudes[k] * spec.magnitudes[k];
    total += p;
    if (k % k0 != 0) off += p;
  }
  return total > 0 ? off / total : 0.0;
}

SweepGrid scan2d(const ModelConfig& base, const Axis& axis1, const Axis& axis2,
                 const FourierOptions& opts, int jobs) {
  {
    // Configuration errors and a degenerate reference abort the whole scan.
    ModelConfig probe = base;
    set_parameter(probe, axis1.name, axis1.values.empty() ? 0.0 : axis1.values.front());
    set_parameter(probe, axis2.name, axis2.values.empty() ? 0.0 : axis2.values.front());
    validate(probe);
    check_sampling(opts.n_periods, opts.samples_per_period);
    const auto r = spectrum(reference_series(probe, opts.n_periods, opts.samples_per_period));
    const double a_ref = r.magnitudes[r.bin(1.0 / period(probe))];
    if (a_ref < 1e-9) throw DegenerateReference(a_ref);
  }
  return evaluate_grid(axis1, axis2, "fourier_peak", jobs, [&](double a, double b) {
    ModelConfig cfg = base;
    set_parameter(cfg, axis1.name, a);
    set_parameter(cfg, axis2.name, b);
    return fourier_peak_metric(cfg, opts);
  });
}

}  // namespace qcomp
