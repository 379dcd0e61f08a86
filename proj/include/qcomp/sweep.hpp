#pragma once

#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <string>
#include <thread>
#include <vector>

#include "qcomp/model.hpp"

/// Parameter planes and 1D magic-value search over a ModelConfig.
namespace qcomp {

struct Axis {
  std::string name;
  std::vector<double> values;

  /// n points from lo to hi inclusive (n = 1 gives {lo}).
  static Axis linspace(std::string name, double lo, double hi, int n);
};

/// Throws std::invalid_argument unless the axis is non-empty and strictly monotone.
void check_axis(const Axis& axis);

/// cells(i, j) is the metric at (axis1[i], axis2[j]); row-major storage.
/// Failed cells hold NaN.
struct SweepGrid {
  std::string axis1_name;
  std::string axis2_name;
  std::vector<double> axis1_values;
  std::vector<double> axis2_values;
  std::vector<double> cells;
  std::string metric_name;

  [[nodiscard]] std::size_t rows() const { return axis1_values.size(); }
  [[nodiscard]] std::size_t cols() const { return axis2_values.size(); }
  [[nodiscard]] double operator()(std::size_t i, std::size_t j) const { return cells[i * cols() + j]; }
};

/// Worker count for `jobs` (<= 0 means all hardware threads).
int resolve_jobs(int jobs);

/// Evaluates cell(a1, a2) over the plane on up to `jobs` threads. A cell
/// that throws is stored as NaN; results do not depend on the thread count.
template <typename Cell>
SweepGrid evaluate_grid(const Axis& axis1, const Axis& axis2, std::string metric_name, int jobs,
                        Cell&& cell) {
  check_axis(axis1);
  check_axis(axis2);
  SweepGrid g{axis1.name, axis2.name, axis1.values, axis2.values, {}, std::move(metric_name)};
  const std::size_t n = g.rows() * g.cols();
  g.cells.assign(n, std::numeric_limits<double>::quiet_NaN());

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k = next++; k < n; k = next++) {
      try {
        g.cells[k] = cell(g.axis1_values[k / g.cols()], g.axis2_values[k % g.cols()]);
      } catch (const std::exception&) {
        // left as NaN
      }
    }
  };
  const int workers = std::min<std::size_t>(resolve_jobs(jobs), n);
  std::vector<std::jthread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  return g;
}

/// 1 - F(n_checkpoint T) over the plane spanned by two parameter_names().
SweepGrid infidelity_grid(const ModelConfig& base, const Axis& axis1, const Axis& axis2,
                          int n_checkpoint, int jobs = 0);

/// F(nT) for n = 1..n_max.
FidelitySeries fidelity_vs_n(ModelConfig cfg, int n_max);

struct MagicValue {
  double V_T2;
  double infidelity;
};

/// Golden-section minimum of 1 - F(n_checkpoint T) over V T2 in [lo, hi],
/// to within `tol`. Throws SearchFailure when the interval is empty or the
/// minimum sits on an endpoint (the interval does not bracket it).
MagicValue locate_magic(const ModelConfig& cfg, double lo, double hi, int n_checkpoint,
                        double tol = 1e-4);

}  // namespace qcomp
