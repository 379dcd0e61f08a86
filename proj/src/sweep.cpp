#include "qcomp/sweep.hpp"

#include <cmath>
#include <stdexcept>

namespace qcomp {

Axis Axis::linspace(std::string name, double lo, double hi, int n) {
  if (n < 1) throw std::invalid_argument(name + ": number of points must be >= 1");
  Axis a{std::move(name), {}};
  a.values.reserve(n);
  // Weighted form: symmetric ranges hit 0 exactly at the centre.
  for (int k = 0; k < n; ++k) {
    const double t = n == 1 ? 0.0 : static_cast<double>(k) / (n - 1);
    a.values.push_back(lo * (1.0 - t) + hi * t);
  }
  return a;
}

void check_axis(const Axis& axis) {
  if (axis.values.empty()) throw std::invalid_argument(axis.name + ": axis is empty");
  const bool up = axis.values.size() < 2 || axis.values[1] > axis.values[0];
  for (std::size_t k = 0; k < axis.values.size(); ++k) {
    if (!std::isfinite(axis.values[k])) throw std::invalid_argument(axis.name + ": non-finite value");
    if (k > 0 && (up ? !(axis.values[k] > axis.values[k - 1]) : !(axis.values[k] < axis.values[k - 1])))
      throw std::invalid_argument(axis.name + ": values must be strictly monotone");
  }
}

int resolve_jobs(int jobs) {
  if (jobs > 0) return jobs;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

SweepGrid infidelity_grid(const ModelConfig& base, const Axis& axis1, const Axis& axis2,
                          int n_checkpoint, int jobs) {
  if (n_checkpoint < 1 || n_checkpoint > 10000)
    throw std::invalid_argument("n_checkpoint: must be in [1, 10000]");
  // Bad axis names and invalid configurations are caller errors, not cell failures.
  {
    ModelConfig probe = base;
    set_parameter(probe, axis1.name, axis1.values.empty() ? 0.0 : axis1.values.front());
    set_parameter(probe, axis2.name, axis2.values.empty() ? 0.0 : axis2.values.front());
    validate(probe);
  }
  return evaluate_grid(axis1, axis2, "infidelity_at_nT", jobs, [&](double a, double b) {
    ModelConfig cfg = base;
    set_parameter(cfg, axis1.name, a);
    set_parameter(cfg, axis2.name, b);
    return infidelity_at(cfg, n_checkpoint);
  });
}

FidelitySeries fidelity_vs_n(ModelConfig cfg, int n_max) {
  if (n_max < 1 || n_max > 10000) throw std::invalid_argument("n_periods: must be in [1, 10000]");
  set_n_periods(cfg, n_max);
  return fidelity_series(cfg);
}

MagicValue locate_magic(const ModelConfig& cfg, double lo, double hi, int n_checkpoint,
                        double tol) {
  auto f = [&](double x) {
    ModelConfig c = cfg;
    set_parameter(c, "V_T2", x);
    return infidelity_at(c, n_checkpoint);
  };
  if (!(tol > 0)) throw std::invalid_argument("tol: must be positive");
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(hi - lo > 2 * tol)) {
    const double flo = std::isfinite(lo) ? f(lo) : NAN;
    const double fhi = std::isfinite(hi) ? f(hi) : NAN;
    throw SearchFailure("search interval [" + std::to_string(lo) + ", " + std::to_string(hi) +
                            "] is degenerate",
                        lo, hi, flo, fhi);
  }

  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - r * (b - a), d = a + r * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = f(d);
    }
  }
  const double x = 0.5 * (a + b);
  if (x - lo < 2 * tol || hi - x < 2 * tol) {
    throw SearchFailure("interval [" + std::to_string(lo) + ", " + std::to_string(hi) +
                            "] does not bracket a minimum",
                        lo, hi, f(lo), f(hi));
  }
  return {x, f(x)};
}

}  // namespace qcomp
