#include "qcomp/model.hpp"

#include <numbers>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace qcomp {

namespace {

template <typename... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

[[noreturn]] void unknown_parameter(const ModelConfig& cfg, std::string_view name) {
  throw std::invalid_argument("unknown parameter '" + std::string(name) + "' for model " +
                              std::string(model_name(cfg)));
}

void set_onephoton(OnePhotonParams& p, std::string_view name, double value, const ModelConfig& cfg) {
  if (name == "eps") p.eps_rot = value;
  else if (name == "V_T2") p.V = value / p.T2;
  else if (name == "delta_T1") p.delta = value / p.T1;
  else if (name == "omega_scale") p.rabi_base = value * std::numbers::pi / p.T1;
  else unknown_parameter(cfg, name);
}

double get_onephoton(const OnePhotonParams& p, std::string_view name, const ModelConfig& cfg) {
  if (name == "eps") return p.eps_rot;
  if (name == "V_T2") return p.V * p.T2;
  if (name == "delta_T1") return p.delta * p.T1;
  if (name == "omega_scale") return p.rabi_nominal() * p.T1 / std::numbers::pi;
  unknown_parameter(cfg, name);
}

template <typename Config>
auto* onephoton(Config& cfg) {
  using Params = std::conditional_t<std::is_const_v<Config>, const OnePhotonParams, OnePhotonParams>;
  Params* p = std::get_if<twolevel::TwoLevelConfig>(&cfg);
  if (!p) p = std::get_if<dicke::DickeConfig>(&cfg);
  return p;
}

}  // namespace

std::string_view model_name(const ModelConfig& cfg) {
  static constexpr std::string_view names[] = {"twolevel", "dicke", "stirap"};
  return names[cfg.index()];
}

void validate(const ModelConfig& cfg) {
  std::visit([](const auto& c) { c.validate(); }, cfg);
}

double period(const ModelConfig& cfg) {
  return std::visit([](const auto& c) { return c.period(); }, cfg);
}

int n_periods(const ModelConfig& cfg) {
  return std::visit([](const auto& c) { return c.n_periods; }, cfg);
}

void set_n_periods(ModelConfig& cfg, int n) {
  std::visit([n](auto& c) { c.n_periods = n; }, cfg);
}

std::vector<std::string> parameter_names(const ModelConfig& cfg) {
  if (std::holds_alternative<stirap::StirapConfig>(cfg))
    return {"V_T2", "Delta_TG", "Delta2_TG", "omega0_TG"};
  return {"eps", "V_T2", "delta_T1", "omega_scale"};
}

void set_parameter(ModelConfig& cfg, std::string_view name, double value) {
  if (auto* s = std::get_if<stirap::StirapConfig>(&cfg)) {
    if (name == "V_T2") s->V = value / s->T2;
    else if (name == "Delta_TG") s->Delta = value / s->TG;
    else if (name == "Delta2_TG") s->Delta2 = value / s->TG;
    else if (name == "omega0_TG") s->omega0 = value / s->TG;
    else unknown_parameter(cfg, name);
    return;
  }
  set_onephoton(*onephoton(cfg), name, value, cfg);
}

double get_parameter(const ModelConfig& cfg, std::string_view name) {
  if (const auto* s = std::get_if<stirap::StirapConfig>(&cfg)) {
    if (name == "V_T2") return s->V * s->T2;
    if (name == "Delta_TG") return s->Delta * s->TG;
    if (name == "Delta2_TG") return s->Delta2 * s->TG;
    if (name == "omega0_TG") return s->omega0 * s->TG;
    unknown_parameter(cfg, name);
  }
  return get_onephoton(*onephoton(cfg), name, cfg);
}

PiecewiseSchedule<double> build_schedule(const ModelConfig& cfg) {
  return std::visit(
      overloaded{
          [](const twolevel::TwoLevelConfig& c) { return twolevel::build_schedule(c); },
          [](const dicke::DickeConfig& c) { return dicke::build_schedule(c); },
          [](const stirap::StirapConfig& c) {
            return c.systems == 1 ? stirap::build_single_schedule(c)
                                  : stirap::build_pair_schedule(c);
          }},
      cfg);
}

StateVectord initial_state(const ModelConfig& cfg) {
  Eigen::Index dim = 2;
  if (std::holds_alternative<dicke::DickeConfig>(cfg)) dim = 3;
  if (const auto* s = std::get_if<stirap::StirapConfig>(&cfg)) dim = s->systems == 1 ? 3 : 9;
  StateVectord psi = StateVectord::Zero(dim);
  psi(0) = 1.0;
  return psi;
}

double integrator_step(const ModelConfig& cfg) {
  if (const auto* s = std::get_if<stirap::StirapConfig>(&cfg)) return s->step();
  return 0.0;
}

Observables observe(const ModelConfig& cfg, const StateVectord& psi) {
  Observables o;
  if (std::holds_alternative<twolevel::TwoLevelConfig>(cfg)) {
    o.P_g = std::norm(psi(0));
    o.P_e = std::norm(psi(1));
  } else if (std::holds_alternative<dicke::DickeConfig>(cfg)) {
    const auto d = dicke::DickeState::from_vector(psi);
    o.P_g = dicke::fidelity2(d);
    o.P_e = dicke::infidelity2(d);
  } else if (psi.size() == 3) {
    o.P_g = std::norm(psi(0));
    o.P_i = std::norm(psi(1));
    o.P_e = std::norm(psi(2));
  } else {
    const auto p = stirap::system1_populations(psi);
    o.P_g = p[0];
    o.P_i = p[1];
    o.P_e = p[2];
  }
  return o;
}

FidelitySeries fidelity_series(const ModelConfig& cfg) {
  validate(cfg);
  const auto schedule = build_schedule(cfg);
  const int n = n_periods(cfg);
  FidelitySeries out;
  out.period = schedule.period();
  out.fidelity.reserve(n);
  out.infidelity.reserve(n);
  run_stroboscopic(schedule, initial_state(cfg), n, integrator_step(cfg),
                   [&](int, const StateVectord& psi) {
                     const auto o = observe(cfg, psi);
                     out.fidelity.push_back(o.P_g);
                     out.infidelity.push_back(o.P_i + o.P_e);
                   });
  return out;
}

double infidelity_at(ModelConfig cfg, int n) {
  set_n_periods(cfg, n);
  return fidelity_series(cfg).final_infidelity();
}

}  // namespace qcomp
