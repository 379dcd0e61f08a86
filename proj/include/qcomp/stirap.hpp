#pragma once

#include <array>
#include <optional>
#include <vector>

#include "qcomp/core.hpp"
#include "qcomp/onephoton.hpp"

/// Ladder g - i - e driven by Gaussian Pump (g-i) and Stokes (i-e) pulses:
/// a forward pair transfers g -> e around t = 0, a reversed pair returns
/// e -> g around t = T2. Basis |g>, |i>, |e> = 0, 1, 2; two systems use
/// the product index 3 a + b.
namespace qcomp::stirap {

struct StirapConfig {
  double omega0 = 12.0;  // peak Rabi frequency
  double TG = 1.0;       // Gaussian width parameter
  double T1 = 1.2;       // Pump/Stokes peak separation
  double Delta = 1.4;    // intermediate-level detuning
  double Delta2 = 0.0;   // two-photon detuning
  double T2 = 10.0;      // time of the reversed crossing
  double V = 0.0;
  Gating gating = Gating::AlwaysOn;
  int n_periods = 1;
  /// 1: single cascade, 2: interacting pair. Selects the generic model path.
  int systems = 2;
  std::optional<double> dt_step;  // default TG / 500
  std::optional<double> window;   // half-width of a pulse block, default T2 / 2

  [[nodiscard]] double step() const { return dt_step.value_or(TG / 500.0); }
  [[nodiscard]] double half_window() const { return window.value_or(T2 / 2.0); }
  /// Blocks [-w, w] and [T2 - w, T2 + w] tile the period T = T2 + 2 w.
  [[nodiscard]] double period() const { return T2 + 2.0 * half_window(); }
  [[nodiscard]] double period_start() const { return -half_window(); }
  /// Under GatedT2only, V is off for |t - crossing| <= T1/2 + TG.
  [[nodiscard]] double gate_half_width() const { return T1 / 2.0 + TG; }

  void validate() const;
};

struct RabiPair {
  double pump;
  double stokes;
};

/// Forward pair (Stokes first) crossing at t = 0; reversed pair (Pump first)
/// crossing at t = T2.
RabiPair pump_stokes(double t, const StirapConfig& cfg, bool reversed);

Operatord stirap_hamiltonian(double t, const StirapConfig& cfg, bool reversed);

struct DarkState {
  double theta;
  StateVectord amplitudes;  // cos(theta) |g> - sin(theta) |e>
};

/// tan(theta) = Omega_P / Omega_S. Throws std::domain_error when both
/// pulses vanish.
DarkState dark_state(double t, const StirapConfig& cfg, bool reversed);

/// One period of the single three-level system.
PiecewiseSchedule<double> build_single_schedule(const StirapConfig& cfg);
/// One period of two identical interacting systems (dimension 9).
PiecewiseSchedule<double> build_pair_schedule(const StirapConfig& cfg);

struct Populations {
  std::vector<double> g, i, e;
};

struct TimeTrace {
  std::vector<double> t;
  Populations system1;
  Populations system2;  // empty for the single-system run
};

struct StirapRun {
  FidelitySeries fidelity;
  TimeTrace trace;
};

/// Forward then reversed transfer, repeated n_periods times from |g>.
/// `samples_per_period` of 0 skips the trace; a negative value samples once
/// per integrator step.
StirapRun double_stirap_single(const StirapConfig& cfg, int samples_per_period = -1);

/// Two interacting systems from |g1, g2>; F2 via the partial trace onto
/// system 1.
StirapRun double_stirap_two_system(const StirapConfig& cfg, int samples_per_period = -1);

/// Populations of the first factor of a 3 x 3 product state.
std::array<double, 3> system1_populations(const StateVectord& psi);

}  // namespace qcomp::stirap
