#pragma once

#include <functional>
#include <stdexcept>
#include <utility>
#include <variant>
#include <vector>

#include "qcomp/core/linalg.hpp"
#include "qcomp/core/propagate.hpp"
#include "qcomp/core/types.hpp"

namespace qcomp {

/// One period of a piecewise drive. Segments run back to back from local
/// time 0; time-dependent generators receive the segment-local time.
template <typename Real>
class PiecewiseSchedule {
 public:
  using Generator = std::function<Operator<Real>(Real)>;

  struct Segment {
    Real duration;
    std::variant<Operator<Real>, Generator> generator;

    [[nodiscard]] bool is_constant() const {
      return std::holds_alternative<Operator<Real>>(generator);
    }
    [[nodiscard]] const Operator<Real>& hamiltonian() const {
      return std::get<Operator<Real>>(generator);
    }
    [[nodiscard]] Operator<Real> hamiltonian_at(Real tau) const {
      return is_constant() ? hamiltonian() : std::get<Generator>(generator)(tau);
    }
  };

  explicit PiecewiseSchedule(Eigen::Index dim) : dim_(dim) {
    if (dim <= 0) throw std::invalid_argument("PiecewiseSchedule: dimension must be positive");
  }

  PiecewiseSchedule& add_constant(Real duration, Operator<Real> h) {
    check_duration(duration);
    check_generator(h, dim_, "PiecewiseSchedule");
    push(duration, std::move(h));
    return *this;
  }

  PiecewiseSchedule& add_timedep(Real duration, Generator h) {
    check_duration(duration);
    check_generator(h(Real(0)), dim_, "PiecewiseSchedule");
    push(duration, std::move(h));
    return *this;
  }

  [[nodiscard]] Eigen::Index dim() const { return dim_; }
  [[nodiscard]] Real period() const { return period_; }
  [[nodiscard]] const std::vector<Segment>& segments() const { return segments_; }
  /// Local start time of each segment.
  [[nodiscard]] const std::vector<Real>& starts() const { return starts_; }

  [[nodiscard]] bool is_constant() const {
    for (const auto& s : segments_)
      if (!s.is_constant()) return false;
    return true;
  }

 private:
  static void check_duration(Real d) {
    if (!(d >= 0)) throw std::invalid_argument("PiecewiseSchedule: negative segment duration");
  }

  void push(Real duration, std::variant<Operator<Real>, Generator> g) {
    starts_.push_back(period_);
    segments_.push_back(Segment{duration, std::move(g)});
    period_ += duration;
  }

  Eigen::Index dim_;
  Real period_ = 0;
  std::vector<Segment> segments_;
  std::vector<Real> starts_;
};

/// Propagates psi from local time `from` to `to` inside one period.
template <typename Real>
StateVector<Real> propagate_span(const PiecewiseSchedule<Real>& schedule, Real from, Real to,
                                 StateVector<Real> psi, Real dt_step) {
  if (psi.size() != schedule.dim())
    throw std::invalid_argument("propagate_span: dimension mismatch");
  if (!(from <= to)) throw std::invalid_argument("propagate_span: from > to");

  const auto& segs = schedule.segments();
  const auto& starts = schedule.starts();
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const Real a = starts[i];
    const Real b = (i + 1 < segs.size()) ? starts[i + 1] : schedule.period();
    const Real lo = std::max(from, a);
    const Real hi = std::min(to, b);
    if (!(hi > lo)) continue;
    const auto& seg = segs[i];
    if (seg.is_constant()) {
      psi = propagate_constant(seg.hamiltonian(), hi - lo, psi);
    } else {
      const auto& gen = std::get<typename PiecewiseSchedule<Real>::Generator>(seg.generator);
      psi = propagate_timedep<Real>(gen, lo - a, hi - a, dt_step, std::move(psi));
    }
  }
  return psi;
}

template <typename Real>
StateVector<Real> propagate_period(const PiecewiseSchedule<Real>& schedule,
                                   StateVector<Real> psi, Real dt_step) {
  return propagate_span(schedule, Real(0), schedule.period(), std::move(psi), dt_step);
}

/// U(to, from) inside one period: exact exponentials on constant segments,
/// Runge-Kutta on the identity for time-dependent ones.
template <typename Real>
Operator<Real> span_propagator(const PiecewiseSchedule<Real>& schedule, Real from, Real to,
                               Real dt_step) {
  if (!(from <= to)) throw std::invalid_argument("span_propagator: from > to");
  const auto n = schedule.dim();
  Operator<Real> u = Operator<Real>::Identity(n, n);
  const auto& segs = schedule.segments();
  const auto& starts = schedule.starts();
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const Real a = starts[i];
    const Real b = (i + 1 < segs.size()) ? starts[i + 1] : schedule.period();
    const Real lo = std::max(from, a);
    const Real hi = std::min(to, b);
    if (!(hi > lo)) continue;
    const auto& seg = segs[i];
    if (seg.is_constant()) {
      u = hermitian_exp(seg.hamiltonian(), hi - lo) * u;
    } else {
      const auto& gen = std::get<typename PiecewiseSchedule<Real>::Generator>(seg.generator);
      u = propagate_timedep<Real>(gen, lo - a, hi - a, dt_step, std::move(u));
    }
  }
  return u;
}

/// U(T). `dt_step` is only used by time-dependent segments.
template <typename Real>
Operator<Real> period_propagator(const PiecewiseSchedule<Real>& schedule, Real dt_step = 0) {
  if (!schedule.is_constant() && !(dt_step > 0))
    throw std::invalid_argument("period_propagator: time-dependent schedule needs dt_step > 0");
  return span_propagator(schedule, Real(0), schedule.period(), dt_step);
}

/// Runs n periods and hands the state at every t = kT (k = 1..n) to `visit`.
/// Long time-dependent runs integrate U(T) once and reuse it.
template <typename Real, typename Visit>
StateVector<Real> run_stroboscopic(const PiecewiseSchedule<Real>& schedule,
                                   StateVector<Real> psi, int n_periods, Real dt_step,
                                   Visit&& visit) {
  if (schedule.is_constant() || n_periods > schedule.dim()) {
    Operator<Real> u;
    try {
      u = period_propagator(schedule, dt_step);
    } catch (const IntegrationError& e) {
      throw IntegrationError(e.drift(), 1);
    }
    for (int k = 1; k <= n_periods; ++k) {
      psi = u * psi;
      visit(k, psi);
    }
  } else {
    for (int k = 1; k <= n_periods; ++k) {
      try {
        psi = propagate_period(schedule, std::move(psi), dt_step);
      } catch (const IntegrationError& e) {
        throw IntegrationError(e.drift(), k);
      }
      visit(k, psi);
    }
  }
  return psi;
}

/// Uniform sampling at t = p T + j T / samples_per_period, built on
/// precomputed propagators from the period start to each sample.
template <typename Real>
class PeriodicSampler {
 public:
  PeriodicSampler(const PiecewiseSchedule<Real>& schedule, int samples_per_period, Real dt_step)
      : period_(schedule.period()), spp_(samples_per_period) {
    if (samples_per_period < 1)
      throw std::invalid_argument("PeriodicSampler: samples_per_period must be >= 1");
    const auto n = schedule.dim();
    Operator<Real> u = Operator<Real>::Identity(n, n);
    offsets_.push_back(u);
    for (int j = 1; j <= spp_; ++j) {
      const Real t0 = sample_time(j - 1);
      const Real t1 = (j == spp_) ? period_ : sample_time(j);
      u = span_propagator(schedule, t0, t1, dt_step) * u;
      offsets_.push_back(u);
    }
  }

  [[nodiscard]] Real sample_time(int j) const {
    return period_ * static_cast<Real>(j) / static_cast<Real>(spp_);
  }
  [[nodiscard]] int samples_per_period() const { return spp_; }

  /// visit(period_index, sample_index, state); returns the state at n T.
  template <typename Visit>
  StateVector<Real> run(StateVector<Real> psi, int n_periods, Visit&& visit) const {
    for (int p = 0; p < n_periods; ++p) {
      for (int j = 0; j < spp_; ++j) visit(p, j, StateVector<Real>(offsets_[j] * psi));
      psi = offsets_[spp_] * psi;
    }
    return psi;
  }

 private:
  Real period_;
  int spp_;
  std::vector<Operator<Real>> offsets_;
};

}  // namespace qcomp
