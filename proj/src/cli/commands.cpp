#include "qcomp/cli/commands.hpp"

#include <cmath>
#include <filesystem>
#include <iostream>
#include <limits>
#include <vector>

#include <CLI11.hpp>

#include "qcomp/cli/config.hpp"
#include "qcomp/cli/io.hpp"
#include "qcomp/fourier.hpp"
#include "qcomp/sweep.hpp"

namespace fs = std::filesystem;

namespace qcomp::cli {

namespace {

/// Refusal to clobber existing outputs; reported as a usage error.
class OverwriteError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<std::string> prepare_outputs(const RunManifest& m,
                                         std::initializer_list<const char*> names) {
  fs::create_directories(m.output_dir);
  std::vector<std::string> paths;
  for (const char* n : names) {
    const auto p = (fs::path(m.output_dir) / n).string();
    if (!m.force && fs::exists(p))
      throw OverwriteError("'" + p + "' exists; pass --force to overwrite");
    paths.push_back(p);
  }
  return paths;
}

void print_seed(const RunManifest& m, std::ostream& out) {
  if (m.seed) out << "seed=" << *m.seed << " (unused: computation is deterministic)\n";
}

Table timeseries_table(const ModelConfig& model, int spp) {
  const bool three_level = std::holds_alternative<stirap::StirapConfig>(model);
  Table t{{"t", "P_g", "P_e"}, {{}, {}, {}}};
  if (three_level) {
    t.header.push_back("P_i");
    t.columns.emplace_back();
  }
  auto push = [&](double time, const Observables& o) {
    t.columns[0].push_back(time);
    t.columns[1].push_back(o.P_g);
    t.columns[2].push_back(o.P_e);
    if (three_level) t.columns[3].push_back(o.P_i);
  };
  const auto schedule = build_schedule(model);
  const PeriodicSampler<double> sampler(schedule, spp, integrator_step(model));
  const double T = schedule.period();
  const double t0 = three_level ? std::get<stirap::StirapConfig>(model).period_start() : 0.0;
  const int n = n_periods(model);
  const auto last = sampler.run(initial_state(model), n, [&](int p, int j, const StateVectord& psi) {
    push(t0 + p * T + sampler.sample_time(j), observe(model, psi));
  });
  push(t0 + n * T, observe(model, last));
  return t;
}

void print_min(const SweepGrid& g, std::ostream& out) {
  std::size_t best = g.cells.size();
  for (std::size_t k = 0; k < g.cells.size(); ++k)
    if (!std::isnan(g.cells[k]) && (best == g.cells.size() || g.cells[k] < g.cells[best])) best = k;
  if (best == g.cells.size()) {
    out << "min " << g.metric_name << ": all cells failed\n";
    return;
  }
  out << "min " << g.metric_name << "=" << format_number(g.cells[best]) << " at "
      << g.axis1_name << "=" << format_number(g.axis1_values[best / g.cols()]) << ", "
      << g.axis2_name << "=" << format_number(g.axis2_values[best % g.cols()]) << "\n";
  std::size_t failed = 0;
  for (double c : g.cells) failed += std::isnan(c);
  if (failed) out << "failed cells: " << failed << "\n";
}

const SweepSettings& require_sweep(const RunConfig& cfg, const char* who) {
  if (!cfg.sweep) throw ConfigError("sweep", std::string(who) + " needs a [sweep] section with two axes");
  return *cfg.sweep;
}

void write_grid(const SweepGrid& g, const std::vector<std::string>& paths, std::ostream& out) {
  write_grid_csv(paths[0], g);
  write_pgm(paths[1], g);
  print_min(g, out);
}

template <typename Body>
int guarded(const RunManifest& m, std::ostream& err, Body&& body) {
  try {
    body();
    return kOk;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const OverwriteError& e) {
    err << "error: " << e.what() << "\n";
    return kConfig;
  } catch (const SearchFailure& e) {
    err << "search failure: " << e.what() << "\n  f(" << format_number(e.lo())
        << ")=" << format_number(e.f_lo()) << "\n  f(" << format_number(e.hi())
        << ")=" << format_number(e.f_hi()) << "\n";
    return kSearchFailure;
  } catch (const DegenerateReference& e) {
    err << "degenerate reference: " << e.what() << "\n";
    return kDegenerateReference;
  } catch (const IntegrationError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kNumeric;
  } catch (const std::invalid_argument& e) {
    // Model-level validation not caught while parsing.
    err << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kOther;
  } catch (const std::exception& e) {
    err << "error in " << m.subcommand << ": " << e.what() << "\n";
    return kOther;
  }
}

}  // namespace

int cmd_simulate(const RunManifest& m, std::ostream& out, std::ostream& err) {
  return guarded(m, err, [&] {
    const RunConfig cfg = load_config(m.config_path);
    const auto paths = prepare_outputs(m, {"timeseries.csv", "fidelity.csv"});
    print_seed(m, out);
    const FidelitySeries f = fidelity_series(cfg.model);
    Table ft{{"n", "F"}, {{}, f.fidelity}};
    for (std::size_t k = 1; k <= f.size(); ++k) ft.columns[0].push_back(static_cast<double>(k));
    write_csv(paths[0], timeseries_table(cfg.model, cfg.samples_per_period));
    write_csv(paths[1], ft);
    out << "F(nT)=" << format_number(f.final_fidelity()) << " n=" << f.size() << "\n";
  });
}

int cmd_sweep(const RunManifest& m, std::ostream& out, std::ostream& err) {
  return guarded(m, err, [&] {
    const RunConfig cfg = load_config(m.config_path);
    const auto& s = require_sweep(cfg, "sweep");
    const auto paths = prepare_outputs(m, {"grid.csv", "grid.pgm"});
    print_seed(m, out);
    write_grid(infidelity_grid(cfg.model, s.axis1.axis(), s.axis2.axis(), s.n_checkpoint, m.jobs),
               paths, out);
  });
}

int cmd_fourier(const RunManifest& m, std::ostream& out, std::ostream& err) {
  return guarded(m, err, [&] {
    const RunConfig cfg = load_config(m.config_path);
    const auto& opts = cfg.fourier.options;
    if (cfg.fourier.mode == FourierMode::Grid) {
      const auto& s = require_sweep(cfg, "fourier grid mode");
      const auto paths = prepare_outputs(m, {"grid.csv", "grid.pgm"});
      print_seed(m, out);
      write_grid(scan2d(cfg.model, s.axis1.axis(), s.axis2.axis(), opts, m.jobs), paths, out);
      return;
    }
    const auto paths = prepare_outputs(m, {"spectrum.csv"});
    print_seed(m, out);
    const double nu0 = 1.0 / period(cfg.model);
    const auto spec = spectrum(
        population_difference_series(cfg.model, opts.n_periods, opts.samples_per_period));
    const auto ref = spectrum(reference_series(cfg.model, opts.n_periods, opts.samples_per_period));
    const double metric = peak_metric(spec, ref, nu0);

    Table t{{"nu", "magnitude"}, {{}, {}}};
    for (std::size_t k = 0; k <= spec.magnitudes.size() / 2; ++k) {
      t.columns[0].push_back(static_cast<double>(k) * spec.dnu);
      t.columns[1].push_back(spec.magnitudes[k]);
    }
    write_csv(paths[0], t);
    out << "nu0=" << format_number(nu0) << "\n";
    out << "peak_metric=" << format_number(metric) << "\n";
    out << "off_harmonic_fraction=" << format_number(off_harmonic_fraction(spec, nu0)) << "\n";
    const auto bands = sideband_frequencies(spec, nu0);
    if (bands.empty()) out << "sidebands: none\n";
    for (const auto& b : bands)
      out << "sideband nu=" << format_number(b.frequency)
          << " magnitude=" << format_number(b.magnitude) << "\n";
  });
}

int cmd_magic(const RunManifest& m, std::ostream& out, std::ostream& err) {
  return guarded(m, err, [&] {
    const RunConfig cfg = load_config(m.config_path);
    if (!cfg.magic) throw ConfigError("magic", "magic needs a [magic] section with lo and hi");
    const auto& s = *cfg.magic;
    const auto paths = prepare_outputs(m, {"magic.csv"});
    print_seed(m, out);
    const auto r = locate_magic(cfg.model, s.lo, s.hi, s.n_checkpoint, s.tol);
    write_csv(paths[0], Table{{"V_T2", "infidelity"}, {{r.V_T2}, {r.infidelity}}});
    out << "V_T2=" << format_number(r.V_T2) << " infidelity=" << format_number(r.infidelity)
        << "\n";
  });
}

int run(const RunManifest& m, std::ostream& out, std::ostream& err) {
  if (m.subcommand == "simulate") return cmd_simulate(m, out, err);
  if (m.subcommand == "sweep") return cmd_sweep(m, out, err);
  if (m.subcommand == "fourier") return cmd_fourier(m, out, err);
  if (m.subcommand == "magic") return cmd_magic(m, out, err);
  err << "unknown subcommand '" << m.subcommand << "'\n";
  return kConfig;
}

int main(int argc, char** argv) {
  CLI::App app{"Interaction-compensated qubit sequences: simulate, sweep, fourier, magic"};
  app.require_subcommand(1);
  RunManifest m;
  std::uint64_t seed = 0;
  for (const char* name : {"simulate", "sweep", "fourier", "magic"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", m.config_path, "Run configuration file")->required();
    sub->add_option("--out", m.output_dir, "Output directory (created if absent)");
    sub->add_option("--jobs", m.jobs, "Worker threads for grids (0 = all cores)")
        ->check(CLI::NonNegativeNumber);
    sub->add_flag("--force", m.force, "Overwrite existing output files");
    sub->add_option("--seed", seed, "Accepted for interface compatibility; runs are deterministic");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfig;
  }
  m.subcommand = app.get_subcommands().front()->get_name();
  if (app.get_subcommands().front()->count("--seed")) m.seed = seed;
  return run(m, std::cout, std::cerr);
}

}  // namespace qcomp::cli
