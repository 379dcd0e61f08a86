#include "qcomp/dicke.hpp"

#include <cmath>
#include <numbers>

#include "qcomp/twolevel.hpp"

namespace qcomp::dicke {

DickeState DickeState::from_vector(const StateVectord& v) {
  if (v.size() != 3) throw std::invalid_argument("DickeState: expected 3 amplitudes");
  return {v(0), v(1), v(2)};
}

double DickeState::norm_squared() const {
  return std::norm(c_gg) + std::norm(c_s) + std::norm(c_ee);
}

DickeHamiltonians dicke_hamiltonians(const DickeConfig& cfg) {
  const double coupling = cfg.rabi() / std::numbers::sqrt2;
  Operatord laser = Operatord::Zero(3, 3);
  laser(0, 1) = laser(1, 0) = coupling;
  laser(1, 2) = laser(2, 1) = coupling;
  laser(1, 1) = -cfg.delta;
  laser(2, 2) = -2.0 * cfg.delta;
  Operatord interaction = Operatord::Zero(3, 3);
  interaction(2, 2) = cfg.V;
  return {laser, interaction};
}

double fidelity2(const DickeState& state) {
  return std::norm(state.c_gg) + 0.5 * std::norm(state.c_s);
}

double infidelity2(const DickeState& state) {
  return std::norm(state.c_ee) + 0.5 * std::norm(state.c_s);
}

PiecewiseSchedule<double> build_schedule(const DickeConfig& cfg) {
  cfg.validate();
  const auto [laser, interaction] = dicke_hamiltonians(cfg);
  const Operatord pulse = cfg.gating == Gating::AlwaysOn ? Operatord(laser + interaction) : laser;
  PiecewiseSchedule<double> s(3);
  s.add_constant(cfg.T1, pulse).add_constant(cfg.T2, interaction);
  s.add_constant(cfg.T1, pulse).add_constant(cfg.T2, interaction);
  return s;
}

std::vector<DickeState> state_series(const DickeConfig& cfg) {
  const auto schedule = build_schedule(cfg);
  std::vector<DickeState> out;
  out.reserve(cfg.n_periods);
  StateVectord psi = StateVectord::Zero(3);
  psi(0) = 1.0;
  run_stroboscopic(schedule, psi, cfg.n_periods, 0.0,
                   [&](int, const StateVectord& s) { out.push_back(DickeState::from_vector(s)); });
  return out;
}

FidelitySeries fidelity_series_dicke(const DickeConfig& cfg) {
  FidelitySeries out;
  out.period = cfg.period();
  for (const auto& s : state_series(cfg)) {
    out.fidelity.push_back(fidelity2(s));
    out.infidelity.push_back(infidelity2(s));
  }
  return out;
}

Occupations closed_form_occupations(double omega_t1, double phi) {
  const double c1 = std::cos(omega_t1);
  const double s1 = std::sin(omega_t1);
  const double one_minus_c1 = 1.0 - c1;
  const double one_minus_cphi = 1.0 - std::cos(phi);
  const double sphi = std::sin(phi);

  const double bracket =
      (1.0 - std::cos(2.0 * omega_t1)) - 0.5 * one_minus_c1 * one_minus_c1 * one_minus_cphi;
  const double c_gg_sq = 0.25 * bracket * bracket +
                         std::pow(one_minus_c1, 4) * sphi * sphi / 16.0;
  const double c_s_sq = 0.25 * s1 * s1 *
                        (c1 * c1 * (5.0 + 3.0 * std::cos(phi)) + (2.0 * c1 + 1.0) * one_minus_cphi);
  return {c_gg_sq, c_s_sq};
}

namespace {

twolevel::TwoLevelConfig single_qubit(const DickeConfig& cfg) {
  twolevel::TwoLevelConfig q;
  static_cast<OnePhotonParams&>(q) = cfg;
  q.V = 0.0;
  q.gating = Gating::GatedT2only;
  return q;
}

}  // namespace

Operatord product_laser_hamiltonian(const DickeConfig& cfg) {
  const Operatord h = twolevel::pulse_hamiltonian(single_qubit(cfg));
  const Operatord id = Operatord::Identity(2, 2);
  return kron(h, id) + kron(id, h);
}

Operatord product_interaction_hamiltonian(const DickeConfig& cfg) {
  Operatord h = Operatord::Zero(4, 4);
  h(3, 3) = cfg.V;
  return h;
}

StateVectord singlet_state() {
  StateVectord a = StateVectord::Zero(4);
  a(1) = 1.0 / std::numbers::sqrt2;
  a(2) = -1.0 / std::numbers::sqrt2;
  return a;
}

TwoQubitRun full_two_qubit_oracle(const DickeConfig& cfg) {
  cfg.validate();
  const Operatord laser = product_laser_hamiltonian(cfg);
  const Operatord interaction = product_interaction_hamiltonian(cfg);
  const Operatord pulse = cfg.gating == Gating::AlwaysOn ? Operatord(laser + interaction) : laser;
  const StateVectord singlet = singlet_state();

  TwoQubitRun run;
  run.fidelity.period = cfg.period();
  StateVectord psi = StateVectord::Zero(4);
  psi(0) = 1.0;
  auto watch = [&](const StateVectord& s) {
    run.max_singlet_amplitude = std::max(run.max_singlet_amplitude, std::abs(singlet.dot(s)));
  };
  for (int k = 1; k <= cfg.n_periods; ++k) {
    for (int half = 0; half < 2; ++half) {
      psi = propagate_constant(pulse, cfg.T1, psi);
      watch(psi);
      psi = propagate_constant(interaction, cfg.T2, psi);
      watch(psi);
    }
    const Operatord rho = partial_trace_second(psi, 2, 2);
    run.fidelity.fidelity.push_back(ground_fidelity(rho));
    run.fidelity.infidelity.push_back(std::real(rho(1, 1)));
  }
  return run;
}

}  // namespace qcomp::dicke
