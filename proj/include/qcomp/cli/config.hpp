#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "qcomp/fourier.hpp"
#include "qcomp/model.hpp"
#include "qcomp/sweep.hpp"

/// Run configuration files: `[section]` headers followed by `key = value`
/// lines; `#` and `;` start comment lines. See docs/config-schema.md.
namespace qcomp::cli {

/// Invalid configuration; `key()` is the section-qualified key ("stirap.TG").
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::invalid_argument(key.empty() ? message : key + ": " + message), key_(std::move(key)) {}

  [[nodiscard]] const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

/// `points` values from `from` to `to` inclusive; either direction.
struct AxisSpec {
  std::string name;
  double from = 0;
  double to = 0;
  int points = 0;

  [[nodiscard]] Axis axis() const { return Axis::linspace(name, from, to, points); }
};

struct SweepSettings {
  AxisSpec axis1;
  AxisSpec axis2;
  int n_checkpoint = 50;
};

enum class FourierMode { Point, Grid };

struct FourierSettings {
  FourierMode mode = FourierMode::Point;
  FourierOptions options;
};

struct MagicSettings {
  double lo = 0;
  double hi = 0;
  int n_checkpoint = 50;
  double tol = 1e-4;
};

struct RunConfig {
  ModelConfig model;
  /// Samples per period of simulate's timeseries.csv.
  int samples_per_period = 200;
  std::optional<SweepSettings> sweep;
  FourierSettings fourier;
  std::optional<MagicSettings> magic;
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

}  // namespace qcomp::cli
