#include "qcomp/cli/config.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <algorithm>
#include <sstream>

namespace qcomp::cli {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

using Section = std::map<std::string, std::string>;
using Document = std::map<std::string, Section>;

Document parse_document(const std::string& text) {
  Document doc;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("", "line " + std::to_string(lineno) + ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      if (doc.count(section)) throw ConfigError(section, "duplicate section");
      doc[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("", "line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    if (section.empty()) throw ConfigError(key, "key outside of any section");
    auto& sec = doc[section];
    if (sec.count(key)) throw ConfigError(section + "." + key, "duplicate key");
    sec[key] = trim(line.substr(eq + 1));
  }
  return doc;
}

// Reads keys out of one section; whatever is left over is unknown.
class Reader {
 public:
  Reader(Document& doc, std::string name) : name_(std::move(name)) {
    if (auto it = doc.find(name_); it != doc.end()) {
      present_ = true;
      section_ = std::move(it->second);
      doc.erase(it);
    }
  }

  [[nodiscard]] bool present() const { return present_; }
  [[nodiscard]] bool has(const std::string& key) const { return section_.count(key) > 0; }

  std::optional<std::string> text(const std::string& key) {
    auto it = section_.find(key);
    if (it == section_.end()) return std::nullopt;
    std::string v = it->second;
    section_.erase(it);
    return v;
  }

  std::optional<double> number(const std::string& key) {
    auto v = text(key);
    if (!v) return std::nullopt;
    errno = 0;
    char* end = nullptr;
    const double x = std::strtod(v->c_str(), &end);
    if (v->empty() || *end != '\0' || errno == ERANGE || !std::isfinite(x))
      throw ConfigError(qualified(key), "expected a finite number, got '" + *v + "'");
    return x;
  }

  std::optional<int> integer(const std::string& key) {
    auto v = text(key);
    if (!v) return std::nullopt;
    errno = 0;
    char* end = nullptr;
    const long x = std::strtol(v->c_str(), &end, 10);
    if (v->empty() || *end != '\0' || errno == ERANGE || x < -1000000000L || x > 1000000000L)
      throw ConfigError(qualified(key), "expected an integer, got '" + *v + "'");
    return static_cast<int>(x);
  }

  double required_number(const std::string& key) {
    auto v = number(key);
    if (!v) throw ConfigError(qualified(key), "required key is missing");
    return *v;
  }

  void finish() const {
    if (!section_.empty()) throw ConfigError(qualified(section_.begin()->first), "unknown key");
  }

  [[nodiscard]] std::string qualified(const std::string& key) const { return name_ + "." + key; }

 private:
  std::string name_;
  bool present_ = false;
  Section section_;
};

Gating parse_gating(const std::string& v, const std::string& key) {
  if (v == "gated") return Gating::GatedT2only;
  if (v == "always") return Gating::AlwaysOn;
  throw ConfigError(key, "expected 'gated' or 'always', got '" + v + "'");
}

// Config key holding a model field, for error messages.
std::string config_key(const std::string& section, const std::string& field) {
  static const std::map<std::string, std::string> renamed = {
      {"delta", "delta_T1"},  {"V", "V_T2"},          {"rabi_base", "omega_scale"},
      {"omega0", "omega0_TG"}, {"Delta", "Delta_TG"}, {"Delta2", "Delta2_TG"}};
  if (field == "n_periods") return "run.n_periods";
  auto it = renamed.find(field);
  return section + "." + (it == renamed.end() ? field : it->second);
}

// Re-raises model validation failures under the config key they came from.
template <typename Fn>
void with_keys(const std::string& section, Fn&& fn) {
  try {
    fn();
  } catch (const std::invalid_argument& e) {
    const std::string msg = e.what();
    const auto colon = msg.find(':');
    if (colon == std::string::npos) throw ConfigError(section, msg);
    throw ConfigError(config_key(section, msg.substr(0, colon)), trim(msg.substr(colon + 1)));
  }
}

template <typename Config>
Config read_onephoton(Reader& r, std::optional<Gating> gating, std::optional<int> n_periods) {
  Config c;
  if (auto v = r.number("T1")) c.T1 = *v;
  if (auto v = r.number("T2")) c.T2 = *v;
  if (auto v = r.number("eps")) c.eps_rot = *v;
  const double delta_T1 = r.number("delta_T1").value_or(0.0);
  const double V_T2 = r.number("V_T2").value_or(0.0);
  const double omega_scale = r.number("omega_scale").value_or(1.0);
  r.finish();
  if (gating) c.gating = *gating;
  if (n_periods) c.n_periods = *n_periods;
  ModelConfig m = c;
  set_parameter(m, "delta_T1", delta_T1);
  set_parameter(m, "V_T2", V_T2);
  set_parameter(m, "omega_scale", omega_scale);
  c = std::get<Config>(m);
  with_keys("onephoton", [&] { c.validate(); });
  return c;
}

stirap::StirapConfig read_stirap(Reader& r, std::optional<Gating> gating,
                                 std::optional<int> n_periods) {
  stirap::StirapConfig c;
  if (auto v = r.number("TG")) c.TG = *v;
  if (auto v = r.number("T1")) c.T1 = *v;
  if (auto v = r.number("T2")) c.T2 = *v;
  if (auto v = r.number("window")) c.window = *v;
  if (auto v = r.number("dt_step")) c.dt_step = *v;
  if (auto v = r.integer("systems")) c.systems = *v;
  const double omega0_TG = r.number("omega0_TG").value_or(c.omega0 * c.TG);
  const double Delta_TG = r.number("Delta_TG").value_or(c.Delta * c.TG);
  const double Delta2_TG = r.number("Delta2_TG").value_or(0.0);
  const double V_T2 = r.number("V_T2").value_or(0.0);
  r.finish();
  if (!(c.TG > 0)) throw ConfigError("stirap.TG", "must be positive");
  if (gating) c.gating = *gating;
  if (n_periods) c.n_periods = *n_periods;
  c.omega0 = omega0_TG / c.TG;
  c.Delta = Delta_TG / c.TG;
  c.Delta2 = Delta2_TG / c.TG;
  c.V = V_T2 / c.T2;
  with_keys("stirap", [&] { c.validate(); });
  return c;
}

AxisSpec read_axis(Reader& r, const std::string& prefix, const ModelConfig& model) {
  AxisSpec a;
  auto name = r.text(prefix);
  if (!name) throw ConfigError(r.qualified(prefix), "required key is missing");
  a.name = *name;
  const auto names = parameter_names(model);
  if (std::find(names.begin(), names.end(), a.name) == names.end())
    throw ConfigError(r.qualified(prefix), "'" + a.name + "' is not a sweepable parameter of " +
                                               std::string(model_name(model)));
  a.from = r.required_number(prefix + "_from");
  a.to = r.required_number(prefix + "_to");
  const auto points = r.integer(prefix + "_points");
  if (!points) throw ConfigError(r.qualified(prefix + "_points"), "required key is missing");
  a.points = *points;
  if (a.points < 1 || a.points > 100000)
    throw ConfigError(r.qualified(prefix + "_points"), "must be in [1, 100000]");
  if (a.points > 1 && a.to == a.from)
    throw ConfigError(r.qualified(prefix + "_to"), "must differ from " + prefix + "_from");
  return a;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  Document doc = parse_document(text);
  RunConfig cfg;

  Reader model(doc, "model");
  const auto type = model.text("type");
  if (!type) throw ConfigError("model.type", "required key is missing");
  std::optional<Gating> gating;
  if (auto g = model.text("gating")) gating = parse_gating(*g, "model.gating");
  model.finish();

  Reader run(doc, "run");
  const auto n_periods = run.integer("n_periods");
  if (auto v = run.integer("samples_per_period")) cfg.samples_per_period = *v;
  run.finish();
  if (n_periods && (*n_periods < 1 || *n_periods > 10000))
    throw ConfigError("run.n_periods", "must be in [1, 10000]");
  if (cfg.samples_per_period < 1) throw ConfigError("run.samples_per_period", "must be >= 1");

  Reader onephoton(doc, "onephoton");
  Reader stirap(doc, "stirap");
  if (*type == "twolevel" || *type == "dicke") {
    if (stirap.present()) throw ConfigError("stirap", "section does not apply to model " + *type);
    if (*type == "twolevel")
      cfg.model = read_onephoton<twolevel::TwoLevelConfig>(onephoton, gating, n_periods);
    else
      cfg.model = read_onephoton<dicke::DickeConfig>(onephoton, gating, n_periods);
  } else if (*type == "stirap") {
    if (onephoton.present()) throw ConfigError("onephoton", "section does not apply to model stirap");
    cfg.model = read_stirap(stirap, gating, n_periods);
  } else {
    throw ConfigError("model.type", "expected twolevel, dicke or stirap, got '" + *type + "'");
  }

  Reader sweep(doc, "sweep");
  if (sweep.present()) {
    SweepSettings s;
    s.axis1 = read_axis(sweep, "axis1", cfg.model);
    s.axis2 = read_axis(sweep, "axis2", cfg.model);
    if (auto v = sweep.integer("n_checkpoint")) s.n_checkpoint = *v;
    sweep.finish();
    if (s.axis1.name == s.axis2.name) throw ConfigError("sweep.axis2", "must differ from axis1");
    if (s.n_checkpoint < 1 || s.n_checkpoint > 10000)
      throw ConfigError("sweep.n_checkpoint", "must be in [1, 10000]");
    cfg.sweep = s;
  }

  Reader fourier(doc, "fourier");
  if (auto m = fourier.text("mode")) {
    if (*m == "point") cfg.fourier.mode = FourierMode::Point;
    else if (*m == "grid") cfg.fourier.mode = FourierMode::Grid;
    else throw ConfigError("fourier.mode", "expected 'point' or 'grid', got '" + *m + "'");
  }
  if (auto v = fourier.integer("n_periods")) cfg.fourier.options.n_periods = *v;
  if (auto v = fourier.integer("samples_per_period")) cfg.fourier.options.samples_per_period = *v;
  fourier.finish();
  if (cfg.fourier.options.n_periods < 8 || cfg.fourier.options.n_periods > 10000)
    throw ConfigError("fourier.n_periods", "must be in [8, 10000]");
  if (cfg.fourier.options.samples_per_period < 16)
    throw ConfigError("fourier.samples_per_period", "must be >= 16");

  Reader magic(doc, "magic");
  if (magic.present()) {
    MagicSettings s;
    s.lo = magic.required_number("lo");
    s.hi = magic.required_number("hi");
    if (auto v = magic.integer("n_checkpoint")) s.n_checkpoint = *v;
    if (auto v = magic.number("tol")) s.tol = *v;
    magic.finish();
    if (s.n_checkpoint < 1 || s.n_checkpoint > 10000)
      throw ConfigError("magic.n_checkpoint", "must be in [1, 10000]");
    if (!(s.tol > 0)) throw ConfigError("magic.tol", "must be positive");
    cfg.magic = s;
  }

  if (!doc.empty()) throw ConfigError(doc.begin()->first, "unknown section");
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace qcomp::cli
