#pragma once

#include "qcomp/core.hpp"
#include "qcomp/onephoton.hpp"

/// Computational qubit driven by square pi-pulses; the correction qubit,
/// parked in its excited state, acts as an excited-level shift V.
/// Basis: |g> = 0, |e> = 1.
namespace qcomp::twolevel {

struct TwoLevelConfig : OnePhotonParams {};

/// -delta |e><e| + (Omega/2) sigma_x, plus V |e><e| under AlwaysOn gating.
Operatord pulse_hamiltonian(const TwoLevelConfig& cfg);
/// V |e><e|
Operatord wait_hamiltonian(const TwoLevelConfig& cfg);

/// [pulse T1, wait T2, pulse T1, wait T2]
PiecewiseSchedule<double> build_schedule(const TwoLevelConfig& cfg);

Operatord period_propagator(const TwoLevelConfig& cfg);

/// F1(kT) for k = 1..n_periods starting from |g>.
FidelitySeries fidelity_series(const TwoLevelConfig& cfg);

/// The printed small-pulse-error formula,
/// 1 - 1/2 sin^2(2 pi eps) [1 + cos(phi)]. Kept verbatim for comparison;
/// it does not match the exact gated propagator (see closed_form_fidelity_rotation).
double analytic_fidelity_rotation(double eps, double phi);

/// Exact F1(T) of the gated sequence with Omega T1 = pi (1 + eps), delta = 0:
/// 1 - 1/2 sin^2(pi eps) [1 + cos(phi)].
double closed_form_fidelity_rotation(double eps, double phi);

/// Small-eps approximation for the detuning error delta T1 = pi eps:
/// 1 - 2 eps^2 [1 - cos(V T2)] - pi eps^3 (2 T2 + 1) sin(V T2),
/// with T2 read in units of T1. An approximation only; numerics are the reference.
double analytic_fidelity_detuning(double eps, double V, double T2);

/// max |U(T) - I| for the four-factor gated product with rotation angle
/// omega_scale * pi (1 + eps) per pulse and wait phase phi (default pi).
double magic_identity_residual(double eps, double omega_scale, double phi = std::numbers::pi);

}  // namespace qcomp::twolevel
