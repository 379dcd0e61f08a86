#pragma once

#include <vector>

#include "qcomp/core.hpp"
#include "qcomp/onephoton.hpp"

/// Two identically driven qubits in the symmetric Dicke basis
/// {|gg>, |s>, |ee>} = {0, 1, 2}, with the full 4-dimensional
/// two-qubit propagation kept alongside as an oracle.
namespace qcomp::dicke {

struct DickeConfig : OnePhotonParams {};

struct DickeState {
  Complexd c_gg;
  Complexd c_s;
  Complexd c_ee;

  static DickeState from_vector(const StateVectord& v);
  [[nodiscard]] double norm_squared() const;
};

struct DickeHamiltonians {
  Operatord laser;        // couplings Omega/sqrt(2), diagonal (0, -delta, -2 delta)
  Operatord interaction;  // diag(0, 0, V)
};

DickeHamiltonians dicke_hamiltonians(const DickeConfig& cfg);

/// |c_gg|^2 + |c_s|^2 / 2: ground population of the first qubit.
double fidelity2(const DickeState& state);
/// |c_ee|^2 + |c_s|^2 / 2
double infidelity2(const DickeState& state);

PiecewiseSchedule<double> build_schedule(const DickeConfig& cfg);

/// Dicke amplitudes at t = kT for k = 1..n_periods, starting from |gg>.
std::vector<DickeState> state_series(const DickeConfig& cfg);

FidelitySeries fidelity_series_dicke(const DickeConfig& cfg);

struct Occupations {
  double c_gg_sq;
  double c_s_sq;
};

/// Printed closed-form occupations at t = T for delta = 0 and gated V,
/// evaluated literally. Not bounded by 1 (e.g. 4 at Omega T1 = pi,
/// V T2 = pi); reference only.
Occupations closed_form_occupations(double omega_t1, double phi);

/// Two-qubit Hamiltonian pieces in the product basis |q1 q2>, index 2 q1 + q2.
Operatord product_laser_hamiltonian(const DickeConfig& cfg);
Operatord product_interaction_hamiltonian(const DickeConfig& cfg);

/// (|g1 e2> - |e1 g2>) / sqrt(2)
StateVectord singlet_state();

struct TwoQubitRun {
  FidelitySeries fidelity;
  /// Largest |<singlet|psi>| over all segment boundaries of all periods.
  double max_singlet_amplitude = 0.0;
};

/// Brute-force 4-dimensional propagation with F2 by partial trace.
TwoQubitRun full_two_qubit_oracle(const DickeConfig& cfg);

}  // namespace qcomp::dicke
