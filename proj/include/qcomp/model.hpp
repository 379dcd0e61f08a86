#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qcomp/core.hpp"
#include "qcomp/dicke.hpp"
#include "qcomp/stirap.hpp"
#include "qcomp/twolevel.hpp"

/// Uniform access to the three models for sweeps, spectra and the CLI.
namespace qcomp {

using ModelConfig =
    std::variant<twolevel::TwoLevelConfig, dicke::DickeConfig, stirap::StirapConfig>;

/// "twolevel", "dicke" or "stirap".
std::string_view model_name(const ModelConfig& cfg);

void validate(const ModelConfig& cfg);

double period(const ModelConfig& cfg);
int n_periods(const ModelConfig& cfg);
void set_n_periods(ModelConfig& cfg, int n);

/// Dimensionless sweep knobs of the model:
///   one-photon: eps, V_T2, delta_T1, omega_scale
///   stirap:     V_T2, Delta_TG, Delta2_TG, omega0_TG
/// V_T2 moves V at fixed T2; the others likewise move the rate at fixed time.
std::vector<std::string> parameter_names(const ModelConfig& cfg);
void set_parameter(ModelConfig& cfg, std::string_view name, double value);
double get_parameter(const ModelConfig& cfg, std::string_view name);

/// One period of the model's drive and the matching starting state.
PiecewiseSchedule<double> build_schedule(const ModelConfig& cfg);
StateVectord initial_state(const ModelConfig& cfg);
/// Integrator step for time-dependent segments (0 when there are none).
double integrator_step(const ModelConfig& cfg);

/// Level populations of the computational (first) system.
struct Observables {
  double P_g = 0;
  double P_i = 0;  // stirap only
  double P_e = 0;
};

Observables observe(const ModelConfig& cfg, const StateVectord& psi);

/// F(kT), k = 1..n_periods. Infidelity is P_i + P_e. Integration failures
/// carry the period index.
FidelitySeries fidelity_series(const ModelConfig& cfg);

/// 1 - F(n T), with n overriding the configured period count.
double infidelity_at(ModelConfig cfg, int n);

}  // namespace qcomp
