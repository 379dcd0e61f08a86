#include "qcomp/stirap.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qcomp::stirap {

void StirapConfig::validate() const {
  auto bad = [](const char* key, const std::string& why) {
    throw std::invalid_argument(std::string(key) + ": " + why);
  };
  if (!(omega0 >= 0) || !std::isfinite(omega0)) bad("omega0", "must be non-negative");
  if (!(TG > 0) || !std::isfinite(TG)) bad("TG", "must be positive");
  if (!(T1 >= 0) || !std::isfinite(T1)) bad("T1", "must be non-negative");
  if (!std::isfinite(Delta)) bad("Delta", "must be finite");
  if (!std::isfinite(Delta2)) bad("Delta2", "must be finite");
  if (!std::isfinite(V)) bad("V", "must be finite");
  if (!(step() > 0)) bad("dt_step", "must be positive");
  if (!(half_window() >= 4.0 * TG)) bad("window", "must be at least 4 TG");
  if (!(T2 >= 2.0 * half_window())) bad("window", "pulse blocks overlap: need 2 window <= T2");
  if (!(gate_half_width() < half_window())) bad("window", "must exceed T1/2 + TG");
  if (n_periods < 1 || n_periods > 10000) bad("n_periods", "must be in [1, 10000]");
  if (systems != 1 && systems != 2) bad("systems", "must be 1 or 2");
}

RabiPair pump_stokes(double t, const StirapConfig& cfg, bool reversed) {
  auto gauss = [&](double centre) {
    const double x = (t - centre) / cfg.TG;
    return cfg.omega0 * std::exp(-x * x);
  };
  const double h = cfg.T1 / 2.0;
  if (!reversed) return {gauss(h), gauss(-h)};
  return {gauss(cfg.T2 - h), gauss(cfg.T2 + h)};
}

Operatord stirap_hamiltonian(double t, const StirapConfig& cfg, bool reversed) {
  const auto [pump, stokes] = pump_stokes(t, cfg, reversed);
  Operatord h = Operatord::Zero(3, 3);
  h(0, 1) = h(1, 0) = pump / 2.0;
  h(1, 2) = h(2, 1) = stokes / 2.0;
  h(1, 1) = -cfg.Delta;
  h(2, 2) = -cfg.Delta2;
  return h;
}

DarkState dark_state(double t, const StirapConfig& cfg, bool reversed) {
  const auto [pump, stokes] = pump_stokes(t, cfg, reversed);
  if (pump < 1e-300 && stokes < 1e-300) {
    throw std::domain_error("dark_state: mixing angle undefined, both pulses vanish");
  }
  const double theta = std::atan2(pump, stokes);
  StateVectord d = StateVectord::Zero(3);
  d(0) = std::cos(theta);
  d(2) = -std::sin(theta);
  return {theta, d};
}

namespace {

const Operatord& identity3() {
  static const Operatord id = Operatord::Identity(3, 3);
  return id;
}

Operatord pair_hamiltonian(const Operatord& single, double V) {
  Operatord h = kron(single, identity3()) + kron(identity3(), single);
  h(8, 8) += V;
  return h;
}

Operatord free_hamiltonian(const StirapConfig& cfg) {
  Operatord h = Operatord::Zero(3, 3);
  h(1, 1) = -cfg.Delta;
  h(2, 2) = -cfg.Delta2;
  return h;
}

// Appends the block around one crossing. Pieces are split at the gate
// edges so the interaction switches exactly on a segment boundary.
void add_block(PiecewiseSchedule<double>& s, const StirapConfig& cfg, bool reversed, bool pair) {
  const double crossing = reversed ? cfg.T2 : 0.0;
  const double w = cfg.half_window();
  auto piece = [&](double from, double to, bool interaction_on) {
    const double V = interaction_on ? cfg.V : 0.0;
    s.add_timedep(to - from, [cfg, reversed, pair, V, start = crossing + from](double tau) {
      const Operatord h = stirap_hamiltonian(start + tau, cfg, reversed);
      return pair ? pair_hamiltonian(h, V) : h;
    });
  };
  if (pair && cfg.gating == Gating::GatedT2only) {
    const double g = cfg.gate_half_width();
    piece(-w, -g, true);
    piece(-g, g, false);
    piece(g, w, true);
  } else {
    piece(-w, w, true);
  }
}

PiecewiseSchedule<double> build_schedule(const StirapConfig& cfg, bool pair) {
  cfg.validate();
  PiecewiseSchedule<double> s(pair ? 9 : 3);
  add_block(s, cfg, false, pair);
  const double wait = cfg.T2 - 2.0 * cfg.half_window();
  if (wait > 0) {
    const Operatord h = free_hamiltonian(cfg);
    s.add_constant(wait, pair ? pair_hamiltonian(h, cfg.V) : h);
  }
  add_block(s, cfg, true, pair);
  return s;
}

void record(Populations& p, double g, double i, double e) {
  p.g.push_back(g);
  p.i.push_back(i);
  p.e.push_back(e);
}

template <typename Observe>
StirapRun run(const StirapConfig& cfg, bool pair, int samples_per_period, Observe&& observe) {
  const auto schedule = build_schedule(cfg, pair);
  const double T = schedule.period();
  const double dt = cfg.step();
  StirapRun out;
  out.fidelity.period = T;

  StateVectord psi = StateVectord::Zero(pair ? 9 : 3);
  psi(0) = 1.0;

  int spp = samples_per_period;
  if (spp < 0) spp = static_cast<int>(std::ceil(T / dt - 1e-9));

  for (int p = 0; p < cfg.n_periods; ++p) {
    if (spp == 0) {
      psi = propagate_period(schedule, std::move(psi), dt);
    } else {
      for (int j = 0; j < spp; ++j) {
        const double tau0 = T * j / spp;
        const double tau1 = (j + 1 == spp) ? T : T * (j + 1) / spp;
        out.trace.t.push_back(p * T + tau0 + cfg.period_start());
        observe(out.trace, psi);
        psi = propagate_span(schedule, tau0, tau1, std::move(psi), dt);
      }
    }
    const auto pops = pair ? system1_populations(psi)
                           : std::array<double, 3>{std::norm(psi(0)), std::norm(psi(1)),
                                                   std::norm(psi(2))};
    out.fidelity.fidelity.push_back(pops[0]);
    out.fidelity.infidelity.push_back(pops[1] + pops[2]);
  }
  if (spp > 0) {
    out.trace.t.push_back(cfg.n_periods * T + cfg.period_start());
    observe(out.trace, psi);
  }
  return out;
}

}  // namespace

std::array<double, 3> system1_populations(const StateVectord& psi) {
  const Operatord rho = partial_trace_second(psi, 3, 3);
  return {std::real(rho(0, 0)), std::real(rho(1, 1)), std::real(rho(2, 2))};
}

PiecewiseSchedule<double> build_single_schedule(const StirapConfig& cfg) {
  return build_schedule(cfg, false);
}

PiecewiseSchedule<double> build_pair_schedule(const StirapConfig& cfg) {
  return build_schedule(cfg, true);
}

StirapRun double_stirap_single(const StirapConfig& cfg, int samples_per_period) {
  return run(cfg, false, samples_per_period, [](TimeTrace& tr, const StateVectord& psi) {
    record(tr.system1, std::norm(psi(0)), std::norm(psi(1)), std::norm(psi(2)));
  });
}

StirapRun double_stirap_two_system(const StirapConfig& cfg, int samples_per_period) {
  return run(cfg, true, samples_per_period, [](TimeTrace& tr, const StateVectord& psi) {
    const auto p1 = system1_populations(psi);
    const Operatord rho2 = partial_trace_first(psi, 3, 3);
    record(tr.system1, p1[0], p1[1], p1[2]);
    record(tr.system2, std::real(rho2(0, 0)), std::real(rho2(1, 1)), std::real(rho2(2, 2)));
  });
}

}  // namespace qcomp::stirap
