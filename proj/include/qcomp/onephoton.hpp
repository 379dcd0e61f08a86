#pragma once

#include <numbers>
#include <optional>

namespace qcomp {

/// Whether the interaction acts only in the wait intervals or throughout.
enum class Gating { GatedT2only, AlwaysOn };

/// Square-pulse sequence shared by the one-photon models: pulse T1, wait T2,
/// pulse T1, wait T2. All rates are angular frequencies with hbar = 1.
struct OnePhotonParams {
  /// Rabi frequency of an error-free pulse; defaults to pi / T1.
  std::optional<double> rabi_base;
  double T1 = 1.0;
  double T2 = 10.0;
  /// Relative rotation-angle error: Omega T1 = pi (1 + eps_rot).
  double eps_rot = 0.0;
  /// Laser detuning delta.
  double delta = 0.0;
  /// Interaction amplitude V.
  double V = 0.0;
  Gating gating = Gating::GatedT2only;
  int n_periods = 50;

  [[nodiscard]] double rabi_nominal() const { return rabi_base.value_or(std::numbers::pi / T1); }
  [[nodiscard]] double rabi() const { return rabi_nominal() * (1.0 + eps_rot); }
  [[nodiscard]] double period() const { return 2.0 * T1 + 2.0 * T2; }

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

}  // namespace qcomp
