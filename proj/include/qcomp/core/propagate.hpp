#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "qcomp/core/linalg.hpp"
#include "qcomp/core/types.hpp"

namespace qcomp {

/// Hermiticity tolerance used to reject generators, scaled by the entry size.
template <typename Real>
Real hermitian_tolerance(Real scale) {
  return Real(1e-12) * std::max(Real(1), scale);
}

/// Norm loss beyond which a time-dependent propagation is declared failed.
inline constexpr double kMaxNormDrift = 1e-6;

template <typename Real>
void check_generator(const Operator<Real>& h, Eigen::Index dim, const char* who) {
  if (h.rows() != h.cols() || h.rows() != dim) {
    throw std::invalid_argument(std::string(who) + ": dimension mismatch (" +
                                std::to_string(h.rows()) + "x" + std::to_string(h.cols()) +
                                " vs state " + std::to_string(dim) + ")");
  }
  if (hermiticity_defect(h) > hermitian_tolerance(max_norm(h))) {
    throw std::invalid_argument(std::string(who) + ": generator is not Hermitian");
  }
}

/// exp(-i H dt) psi
template <typename Real>
StateVector<Real> propagate_constant(const Operator<Real>& h, Real dt,
                                     const StateVector<Real>& psi) {
  check_generator(h, psi.size(), "propagate_constant");
  if (!(dt >= 0)) throw std::invalid_argument("propagate_constant: negative duration");
  if (dt == 0) return psi;
  return hermitian_exp(h, dt) * psi;
}

/// Classical fourth-order Runge-Kutta for i d(psi)/dt = H(t) psi over [t0, t1]
/// with the largest uniform step not exceeding dt_step. No renormalization:
/// the final norm drift is the health check. `psi` may also be a matrix whose
/// columns are propagated together (e.g. the identity, giving U(t1, t0)).
template <typename Real, typename HamiltonianFn, typename Derived>
typename Derived::PlainObject propagate_timedep(HamiltonianFn&& hfun, Real t0, Real t1,
                                                Real dt_step,
                                                const Eigen::MatrixBase<Derived>& psi0) {
  using State = typename Derived::PlainObject;
  State psi = psi0;
  if (!(dt_step > 0)) throw std::invalid_argument("propagate_timedep: dt_step must be positive");
  if (!(t1 >= t0)) throw std::invalid_argument("propagate_timedep: t1 < t0");
  if (t1 == t0) return psi;

  const auto steps = static_cast<long>(std::ceil((t1 - t0) / dt_step - Real(1e-9)));
  const Real h = (t1 - t0) / static_cast<Real>(steps);
  const Real norm0 = psi.norm();
  const Complex<Real> minus_i(0, -1);

  auto rhs = [&](Real t, const State& y, bool check) -> State {
    const Operator<Real> ham = hfun(t);
    if (check) check_generator(ham, y.rows(), "propagate_timedep");
    return minus_i * (ham * y);
  };

  for (long s = 0; s < steps; ++s) {
    const Real t = t0 + h * static_cast<Real>(s);
    const State k1 = rhs(t, psi, true);
    const State k2 = rhs(t + h / 2, psi + (h / 2) * k1, false);
    const State k3 = rhs(t + h / 2, psi + (h / 2) * k2, false);
    const State k4 = rhs(t + h, psi + h * k3, false);
    psi += (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4);
  }

  const Real drift = std::abs(psi.norm() - norm0);
  if (drift > kMaxNormDrift) throw IntegrationError(static_cast<double>(drift));
  return psi;
}

}  // namespace qcomp
