#include <doctest.h>

#include <cmath>
#include <numbers>

#include <unsupported/Eigen/MatrixFunctions>

#include "qcomp/core.hpp"
#include "support.hpp"

using namespace qcomp;
using testing::random_hermitian;
using testing::random_state;
using testing::uniform;

namespace {

const double pi = std::numbers::pi;

Operatord sigma_x() {
  Operatord s = Operatord::Zero(2, 2);
  s(0, 1) = s(1, 0) = 1.0;
  return s;
}

StateVectord basis(Eigen::Index n, Eigen::Index k) {
  StateVectord v = StateVectord::Zero(n);
  v(k) = 1.0;
  return v;
}

// A smooth driven qutrit for integrator checks.
Operatord driven(double t) {
  Operatord h = Operatord::Zero(3, 3);
  h(0, 1) = h(1, 0) = 2.0 * std::cos(1.3 * t);
  h(1, 2) = h(2, 1) = 1.5 * std::exp(-(t - 1.0) * (t - 1.0));
  h(1, 1) = 0.7;
  h(2, 2) = -0.4 * t;
  return h;
}

}  // namespace

TEST_CASE("propagate_constant: zero Hamiltonian leaves the state alone") {
  for (Eigen::Index n : {2, 3, 4, 9}) {
    const auto psi = random_state(n);
    CHECK(max_norm(propagate_constant(Operatord::Zero(n, n).eval(), 5.0, psi) - psi) <= 1e-15);
  }
}

TEST_CASE("propagate_constant: pi pulse maps |g> to -i|e>") {
  const Operatord h = (pi / 2.0) * sigma_x();  // Omega = pi, dt = 1
  const auto out = propagate_constant(h, 1.0, basis(2, 0));
  CHECK(std::abs(out(0)) <= 1e-15);
  CHECK(std::abs(out(1) - Complexd(0, -1)) <= 1e-15);
}

TEST_CASE("propagate_constant: V|e><e| with V dt = pi flips the relative sign") {
  Operatord h = Operatord::Zero(2, 2);
  h(1, 1) = pi;
  StateVectord psi(2);
  psi << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  const auto out = propagate_constant(h, 1.0, psi);
  CHECK(std::abs(out(0) - psi(0)) <= 1e-15);
  CHECK(std::abs(out(1) + psi(1)) <= 1e-15);
}

TEST_CASE("propagate_constant rejects bad input") {
  CHECK_THROWS_AS(propagate_constant(Operatord::Identity(3, 3).eval(), 1.0, basis(2, 0)),
                  std::invalid_argument);
  Operatord nh = Operatord::Zero(2, 2);
  nh(0, 1) = 1.0;
  CHECK_THROWS_AS(propagate_constant(nh, 1.0, basis(2, 0)), std::invalid_argument);
  CHECK_THROWS_AS(propagate_constant(sigma_x(), -1.0, basis(2, 0)), std::invalid_argument);
}

TEST_CASE("unitarity and norm preservation for random Hermitian generators") {
  for (int trial = 0; trial < 50; ++trial) {
    for (Eigen::Index n : {2, 3, 4, 9}) {
      const auto h = random_hermitian(n, 5.0);
      const double dt = uniform(0.0, 10.0);
      CHECK(unitarity_defect(hermitian_exp(h, dt)) <= 1e-10);
      const auto psi = random_state(n);
      CHECK(std::abs(propagate_constant(h, dt, psi).norm() - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("spectral exponential agrees with Pade scaling-and-squaring in dimension 9") {
  for (int trial = 0; trial < 20; ++trial) {
    const auto h = random_hermitian(9, 3.0);
    const double dt = uniform(0.0, 2.0);
    const Operatord pade = (Complexd(0, -dt) * h).exp();
    CHECK(max_norm(hermitian_exp(h, dt) - pade) <= 1e-11);
  }
}

TEST_CASE("composition: exp over a+b equals exp over a then b") {
  for (int trial = 0; trial < 30; ++trial) {
    for (Eigen::Index n : {2, 3, 4, 9}) {
      const auto h = random_hermitian(n, 2.0);
      const auto psi = random_state(n);
      const double a = uniform(0, 3), b = uniform(0, 3);
      const auto one = propagate_constant(h, a + b, psi);
      const auto two = propagate_constant(h, b, propagate_constant(h, a, psi));
      CHECK(max_norm(one - two) <= 1e-12);
    }
  }
}

TEST_CASE("propagate_timedep reduces to the constant case") {
  const auto h = random_hermitian(4, 2.0);
  const auto psi = random_state(4);
  const auto rk = propagate_timedep(
      [&](double) { return h; }, 0.0, 3.0, 1e-3, psi);
  CHECK(max_norm(rk - propagate_constant(h, 3.0, psi)) <= 1e-10);
}

TEST_CASE("propagate_timedep: zero duration and argument checks") {
  const auto psi = random_state(3);
  CHECK(max_norm(propagate_timedep(driven, 1.0, 1.0, 0.01, psi) - psi) == 0.0);
  CHECK_THROWS_AS(propagate_timedep(driven, 1.0, 0.0, 0.01, psi), std::invalid_argument);
  CHECK_THROWS_AS(propagate_timedep(driven, 0.0, 1.0, 0.0, psi), std::invalid_argument);
  auto non_hermitian = [](double) {
    Operatord h = Operatord::Zero(3, 3);
    h(0, 2) = 1.0;
    return h;
  };
  CHECK_THROWS_AS(propagate_timedep(non_hermitian, 0.0, 1.0, 0.1, psi), std::invalid_argument);
}

TEST_CASE("propagate_timedep: norm drift bound and fourth-order convergence") {
  const auto psi = basis(3, 0);
  const double t1 = 4.0;
  const auto reference = propagate_timedep(driven, 0.0, t1, 1e-4, psi);
  double prev = 0;
  for (double dt : {0.04, 0.02, 0.01, 0.005}) {
    const auto out = propagate_timedep(driven, 0.0, t1, dt, psi);
    if (dt <= 0.01) CHECK(std::abs(out.norm() - 1.0) <= 1e-8);
    const double err = max_norm(out - reference);
    if (prev > 0) CHECK(prev / err >= 8.0);
    prev = err;
  }
}

TEST_CASE("propagate_timedep signals integration failure with the measured drift") {
  auto stiff = [](double) {
    Operatord h = Operatord::Zero(2, 2);
    h(1, 1) = 100.0;
    return h;
  };
  try {
    propagate_timedep(stiff, 0.0, 2.0, 0.5, basis(2, 0) + basis(2, 1));
    FAIL("expected IntegrationError");
  } catch (const IntegrationError& e) {
    CHECK(e.drift() > 1e-6);
  }
}

TEST_CASE("propagating the identity gives the same evolution as propagating states") {
  const auto u = propagate_timedep(driven, 0.0, 2.0, 0.01, Operatord::Identity(3, 3).eval());
  CHECK(unitarity_defect(u) <= 1e-8);
  for (int k = 0; k < 3; ++k) {
    const auto psi = propagate_timedep(driven, 0.0, 2.0, 0.01, basis(3, k));
    CHECK(max_norm(u.col(k) - psi) <= 1e-14);
  }
}

TEST_CASE("tensor product index convention") {
  CHECK(max_norm(kron(Operatord::Identity(2, 2), Operatord::Identity(2, 2)) -
                 Operatord::Identity(4, 4)) == 0.0);
  const Operatord x1 = kron(sigma_x(), Operatord::Identity(2, 2));
  // |g1 g2> = index 0 -> |e1 g2> = index 2
  CHECK(max_norm(x1 * basis(4, 0) - basis(4, 2)) == 0.0);
  Operatord ee = Operatord::Zero(2, 2);
  ee(1, 1) = 1.0;
  const Operatord v = 0.7 * kron(ee, ee);
  Operatord expected = Operatord::Zero(4, 4);
  expected(3, 3) = 0.7;
  CHECK(max_norm(v - expected) == 0.0);
}

TEST_CASE("partial_trace_second examples") {
  const auto rho_gg = partial_trace_second(basis(4, 0), 2, 2);
  CHECK(max_norm(rho_gg - Operatord(Eigen::Vector2cd(1, 0).asDiagonal())) <= 1e-15);

  const StateVectord s = (basis(4, 1) + basis(4, 2)) / std::sqrt(2.0);
  CHECK(max_norm(partial_trace_second(s, 2, 2) - 0.5 * Operatord::Identity(2, 2)) <= 1e-15);

  StateVectord plus(2);
  plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  const StateVectord product = kron(Operatord(plus), Operatord(basis(2, 0)));
  const Operatord proj = plus * plus.adjoint();
  CHECK(max_norm(partial_trace_second(product, 2, 2) - proj) <= 1e-15);

  CHECK_THROWS_AS(partial_trace_second(basis(4, 0), 3, 2), std::invalid_argument);
}

TEST_CASE("partial traces are Hermitian, positive and unit-trace") {
  for (int trial = 0; trial < 50; ++trial) {
    const auto psi = random_state(9);
    for (const Operatord& rho : {partial_trace_second(psi, 3, 3), partial_trace_first(psi, 3, 3)}) {
      CHECK(hermiticity_defect(rho) <= 1e-15);
      CHECK(std::abs(rho.trace() - 1.0) <= 1e-12);
      Eigen::SelfAdjointEigenSolver<Operatord> es(rho);
      CHECK(es.eigenvalues().minCoeff() >= -1e-14);
    }
  }
}

TEST_CASE("partial-trace consistency: ground population summed over the second system") {
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::Index d1 = 3, d2 = trial % 2 ? 3 : 2;
    const auto psi = random_state(d1 * d2);
    double summed = 0;
    for (Eigen::Index k = 0; k < d2; ++k) summed += std::norm(psi(0 * d2 + k));
    CHECK(std::abs(ground_fidelity(partial_trace_second(psi, d1, d2)) - summed) <= 1e-15);
    double summed1 = 0;
    for (Eigen::Index a = 0; a < d1; ++a) summed1 += std::norm(psi(a * d2));
    CHECK(std::abs(std::real(partial_trace_first(psi, d1, d2)(0, 0)) - summed1) <= 1e-15);
  }
}

TEST_CASE("ground_fidelity examples") {
  CHECK(ground_fidelity(basis(2, 0)) == 1.0);
  CHECK(ground_fidelity(basis(2, 1)) == 0.0);
  const Operatord rho = Eigen::Vector2cd(0.75, 0.25).asDiagonal();
  CHECK(ground_fidelity(rho) == 0.75);
}

TEST_CASE("PiecewiseSchedule: period, validation and spans") {
  PiecewiseSchedule<double> s(3);
  const auto a = random_hermitian(3), b = random_hermitian(3);
  s.add_constant(0.5, a).add_timedep(1.25, driven).add_constant(0.75, b);
  CHECK(s.period() == 0.5 + 1.25 + 0.75);
  CHECK_FALSE(s.is_constant());
  CHECK_THROWS_AS(s.add_constant(-1.0, a), std::invalid_argument);
  CHECK_THROWS_AS(s.add_constant(1.0, Operatord::Identity(2, 2).eval()), std::invalid_argument);
  Operatord nh = Operatord::Zero(3, 3);
  nh(0, 1) = 1.0;
  CHECK_THROWS_AS(s.add_constant(1.0, nh), std::invalid_argument);

  const auto psi = random_state(3);
  const double dt = 1e-3;
  auto sequential = propagate_constant(a, 0.5, psi);
  sequential = propagate_timedep(driven, 0.0, 1.25, dt, sequential);
  sequential = propagate_constant(b, 0.75, sequential);
  CHECK(max_norm(propagate_period(s, psi, dt) - sequential) <= 1e-13);

  // Splitting a period at arbitrary points changes nothing but rounding.
  auto split = propagate_span(s, 0.0, 0.3, psi, dt);
  split = propagate_span(s, 0.3, 1.1, split, dt);
  split = propagate_span(s, 1.1, s.period(), split, dt);
  CHECK(max_norm(split - sequential) <= 1e-9);
}

TEST_CASE("PeriodicSampler matches direct propagation") {
  PiecewiseSchedule<double> s(3);
  s.add_constant(0.4, random_hermitian(3)).add_timedep(1.0, driven);
  const double dt = 1e-3;
  const int spp = 7;
  const PeriodicSampler<double> sampler(s, spp, dt);
  const auto psi0 = random_state(3);
  StateVectord direct = psi0;
  double worst = 0;
  const auto last = sampler.run(psi0, 3, [&](int, int j, const StateVectord& psi) {
    worst = std::max(worst, max_norm(psi - direct));
    const double t1 = j + 1 == spp ? s.period() : sampler.sample_time(j + 1);
    direct = propagate_span(s, sampler.sample_time(j), t1, direct, dt);
  });
  CHECK(worst <= 1e-12);
  CHECK(max_norm(last - direct) <= 1e-12);
}
