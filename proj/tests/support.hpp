#pragma once

#include <cstdint>
#include <cstdlib>
#include <random>

#include "qcomp/core.hpp"

namespace testing {

/// Seed for property-test draws; QCOMP_SEED overrides the default.
inline std::uint64_t seed() {
  if (const char* s = std::getenv("QCOMP_SEED")) return std::strtoull(s, nullptr, 10);
  return 20240917ULL;
}

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(seed());
  return gen;
}

inline double uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline qcomp::Operatord random_hermitian(Eigen::Index n, double scale = 1.0) {
  qcomp::Operatord a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = {uniform(-scale, scale), uniform(-scale, scale)};
  return (a + a.adjoint()) / 2.0;
}

inline qcomp::StateVectord random_state(Eigen::Index n) {
  qcomp::StateVectord v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = {uniform(-1, 1), uniform(-1, 1)};
  return v / v.norm();
}

}  // namespace testing
