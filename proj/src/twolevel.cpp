#include "qcomp/twolevel.hpp"

#include <cmath>

namespace qcomp::twolevel {

namespace {

Operatord excited_projector() {
  Operatord p = Operatord::Zero(2, 2);
  p(1, 1) = 1.0;
  return p;
}

}  // namespace

Operatord pulse_hamiltonian(const TwoLevelConfig& cfg) {
  Operatord h = Operatord::Zero(2, 2);
  h(0, 1) = h(1, 0) = cfg.rabi() / 2.0;
  h(1, 1) = -cfg.delta;
  if (cfg.gating == Gating::AlwaysOn) h += cfg.V * excited_projector();
  return h;
}

Operatord wait_hamiltonian(const TwoLevelConfig& cfg) { return cfg.V * excited_projector(); }

PiecewiseSchedule<double> build_schedule(const TwoLevelConfig& cfg) {
  cfg.validate();
  const Operatord pulse = pulse_hamiltonian(cfg);
  const Operatord wait = wait_hamiltonian(cfg);
  PiecewiseSchedule<double> s(2);
  s.add_constant(cfg.T1, pulse).add_constant(cfg.T2, wait);
  s.add_constant(cfg.T1, pulse).add_constant(cfg.T2, wait);
  return s;
}

Operatord period_propagator(const TwoLevelConfig& cfg) {
  return qcomp::period_propagator(build_schedule(cfg));
}

FidelitySeries fidelity_series(const TwoLevelConfig& cfg) {
  const auto schedule = build_schedule(cfg);
  FidelitySeries out;
  out.period = schedule.period();
  out.fidelity.reserve(cfg.n_periods);
  out.infidelity.reserve(cfg.n_periods);
  StateVectord psi = StateVectord::Zero(2);
  psi(0) = 1.0;
  run_stroboscopic(schedule, psi, cfg.n_periods, 0.0, [&](int, const StateVectord& s) {
    out.fidelity.push_back(ground_fidelity(s));
    out.infidelity.push_back(std::norm(s(1)));
  });
  return out;
}

double analytic_fidelity_rotation(double eps, double phi) {
  const double s = std::sin(2.0 * std::numbers::pi * eps);
  return 1.0 - 0.5 * s * s * (1.0 + std::cos(phi));
}

double closed_form_fidelity_rotation(double eps, double phi) {
  const double s = std::sin(std::numbers::pi * eps);
  return 1.0 - 0.5 * s * s * (1.0 + std::cos(phi));
}

double analytic_fidelity_detuning(double eps, double V, double T2) {
  const double phase = V * T2;
  return 1.0 - 2.0 * eps * eps * (1.0 - std::cos(phase)) -
         std::numbers::pi * eps * eps * eps * (2.0 * T2 + 1.0) * std::sin(phase);
}

double magic_identity_residual(double eps, double omega_scale, double phi) {
  // exp(-i (theta/2) sigma_x) and exp(-i phi |e><e|), written out.
  const double half = 0.5 * omega_scale * std::numbers::pi * (1.0 + eps);
  const Complexd c(std::cos(half), 0.0);
  const Complexd is(0.0, -std::sin(half));
  Eigen::Matrix2cd pulse;
  pulse << c, is, is, c;
  Eigen::Matrix2cd wait = Eigen::Matrix2cd::Identity();
  wait(1, 1) = std::polar(1.0, -phi);
  const Eigen::Matrix2cd u = wait * pulse * wait * pulse;
  return max_norm(u - Eigen::Matrix2cd::Identity());
}

}  // namespace qcomp::twolevel
