#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "qcomp/cli/commands.hpp"
#include "qcomp/cli/config.hpp"
#include "qcomp/cli/io.hpp"

using namespace qcomp;
using namespace qcomp::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::path(QCOMP_SCRATCH) / "test_cli" / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string recipe(const std::string& name) { return std::string(QCOMP_RECIPES) + "/" + name; }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

fs::path write_config(const fs::path& dir, const std::string& text) {
  const auto p = dir / "run.cfg";
  std::ofstream(p) << text;
  return p;
}

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(const std::string& sub, const fs::path& config, const fs::path& out_dir,
               bool force = false, int jobs = 1) {
  RunManifest m{sub, config.string(), out_dir.string(), jobs, force, {}};
  std::ostringstream out, err;
  const int code = run(m, out, err);
  return {code, out.str(), err.str()};
}

std::string config_error_key(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.key();
  }
  return "<none>";
}

const char* kTwoLevel = "[model]\ntype = twolevel\n";

}  // namespace

TEST_CASE("config errors name the offending key") {
  CHECK(config_error_key("") == "model.type");
  CHECK(config_error_key("[model]\ntype = qutrit\n") == "model.type");
  CHECK(config_error_key(std::string(kTwoLevel) + "[onephoton]\nepsilon = 0.1\n") == "onephoton.epsilon");
  CHECK(config_error_key(std::string(kTwoLevel) + "[onephoton]\nT1 = -1\n") == "onephoton.T1");
  CHECK(config_error_key(std::string(kTwoLevel) + "[onephoton]\neps = abc\n") == "onephoton.eps");
  CHECK(config_error_key(std::string(kTwoLevel) + "[onephoton]\neps = 0.1\neps = 0.2\n") == "onephoton.eps");
  CHECK(config_error_key(std::string(kTwoLevel) + "[stirap]\nTG = 1\n") == "stirap");  // section of another model
  CHECK(config_error_key(std::string(kTwoLevel) + "[run]\nn_periods = 0\n") == "run.n_periods");
  CHECK(config_error_key(std::string(kTwoLevel) + "[nonsense]\n") == "nonsense");
  CHECK(config_error_key("[model]\ntype = stirap\n[stirap]\nsystems = 3\n") == "stirap.systems");
  CHECK(config_error_key("[model]\ntype = stirap\n[stirap]\nwindow = 2\n") == "stirap.window");
  CHECK(config_error_key(std::string(kTwoLevel) +
                         "[sweep]\naxis1 = eps\naxis1_from = 0\naxis1_to = 1\naxis1_points = 2\n"
                         "axis2 = Delta_TG\naxis2_from = 0\naxis2_to = 1\naxis2_points = 2\n")
            .starts_with("sweep.axis2"));
}

TEST_CASE("config values reach the model") {
  const auto rc = parse_config(
      "# comment\n[model]\ntype = dicke\ngating = always\n\n[onephoton]\n"
      "eps = 0.01\nV_T2 = 2.5\ndelta_T1 = 0.05\n[run]\nn_periods = 7\n");
  const auto& d = std::get<dicke::DickeConfig>(rc.model);
  CHECK(d.gating == Gating::AlwaysOn);
  CHECK(d.eps_rot == 0.01);
  CHECK(d.V == doctest::Approx(0.25));
  CHECK(d.delta == doctest::Approx(0.05));
  CHECK(d.n_periods == 7);
}

TEST_CASE("every shipped recipe loads") {
  for (const auto& e : fs::directory_iterator(QCOMP_RECIPES)) {
    CAPTURE(e.path().string());
    CHECK_NOTHROW(load_config(e.path().string()));
  }
}

TEST_CASE("CSV round trip is exact") {
  const auto dir = scratch("csv");
  Table t{{"a", "b"}, {{0.1, -1e-300, std::numeric_limits<double>::quiet_NaN(), 1.0 / 3},
                       {std::numbers::pi, 12345678.9, -0.0, 5e-324}}};
  write_csv((dir / "t.csv").string(), t);
  const auto back = read_csv((dir / "t.csv").string());
  CHECK(back.header == t.header);
  REQUIRE(back.columns.size() == 2);
  for (std::size_t c = 0; c < 2; ++c)
    for (std::size_t r = 0; r < 4; ++r) {
      const double x = t.columns[c][r], y = back.columns[c][r];
      if (std::isnan(x)) CHECK(std::isnan(y));
      else CHECK(std::memcmp(&x, &y, sizeof x) == 0);
    }
  CHECK(slurp(dir / "t.csv").find("nan") != std::string::npos);
}

TEST_CASE("grid CSV round trip") {
  const auto dir = scratch("grid");
  SweepGrid g{"eps", "V_T2", {-0.01, 0.0, 0.01}, {1.0, 2.0}, {1e-3, 2e-5, NAN, 0.5, 1.0 / 7, 0.0}, "x"};
  write_grid_csv((dir / "g.csv").string(), g);
  const auto back = read_grid_csv((dir / "g.csv").string());
  CHECK(back.axis1_name == "eps");
  CHECK(back.axis2_name == "V_T2");
  CHECK(back.metric_name == "x");
  CHECK(back.axis1_values == g.axis1_values);
  CHECK(back.axis2_values == g.axis2_values);
  for (std::size_t k = 0; k < g.cells.size(); ++k) {
    if (std::isnan(g.cells[k])) CHECK(std::isnan(back.cells[k]));
    else CHECK(back.cells[k] == g.cells[k]);
  }
}

TEST_CASE("gray levels") {
  CHECK(gray_level(kPgmFloor) == 255);
  CHECK(gray_level(0.0) == 255);
  CHECK(gray_level(1e-12) == 255);
  CHECK(gray_level(kPgmCeiling) == 0);
  CHECK(gray_level(3.0) == 0);
  CHECK(gray_level(std::numeric_limits<double>::quiet_NaN()) == 0);
  const int mid = gray_level(1e-4);
  CHECK(mid >= 127);
  CHECK(mid <= 128);
  CHECK(gray_level(1e-6) > gray_level(1e-5));
}

TEST_CASE("PGM layout") {
  const auto dir = scratch("pgm");
  SweepGrid g{"a", "b", {1, 2}, {1, 2, 3}, {1e-8, 1e-4, 1, 1, 1, 1}, "m"};
  write_pgm((dir / "g.pgm").string(), g);
  std::istringstream in(slurp(dir / "g.pgm"));
  std::string magic, line;
  in >> magic;
  CHECK(magic == "P2");
  std::getline(in, line);
  std::getline(in, line);
  CHECK(line.starts_with("#"));
  int w = 0, h = 0, maxval = 0;
  in >> w >> h >> maxval;
  CHECK(w == 3);
  CHECK(h == 2);
  CHECK(maxval == 255);
  std::vector<int> px(6);
  for (int& p : px) in >> p;
  CHECK(px[0] == 255);
  CHECK(px[2] == 0);
}

TEST_CASE("simulate: fig4 recipe") {
  const auto dir = scratch("fig4");
  const auto r = invoke("simulate", recipe("fig4.cfg"), dir);
  REQUIRE(r.code == kOk);
  CHECK(r.out.find("F(nT)=") != std::string::npos);
  const auto f = read_csv((dir / "fidelity.csv").string());
  CHECK(f.header == std::vector<std::string>{"n", "F"});
  REQUIRE(f.columns[0].size() == 50);
  CHECK(f.columns[0].back() == 50);
  const auto ts = read_csv((dir / "timeseries.csv").string());
  CHECK(ts.header == std::vector<std::string>{"t", "P_g", "P_e"});
  CHECK(ts.columns[0].size() == 50 * 22 + 1);
}

TEST_CASE("simulate: fig4 recipe ends above 0.99" * doctest::should_fail()) {
  const auto dir = scratch("fig4b");
  REQUIRE(invoke("simulate", recipe("fig4.cfg"), dir).code == kOk);
  CHECK(read_csv((dir / "fidelity.csv").string()).columns[1].back() > 0.99);
}

TEST_CASE("simulate: fig2 recipe ends with P_g near 0.98" * doctest::should_fail()) {
  const auto dir = scratch("fig2");
  const auto r = invoke("simulate", recipe("fig2.cfg"), dir);
  REQUIRE(r.code == kOk);
  const auto ts = read_csv((dir / "timeseries.csv").string());
  CHECK(ts.header == std::vector<std::string>{"t", "P_g", "P_e", "P_i"});
  CHECK(std::abs(ts.columns[1].back() - 0.98) <= 0.01);
}

TEST_CASE("simulate: empty config is a schema error") {
  const auto dir = scratch("empty");
  const auto r = invoke("simulate", write_config(dir, ""), dir / "out");
  CHECK(r.code == kConfig);
  CHECK(r.err.find("model.type") != std::string::npos);
}

TEST_CASE("sweep: 1x1 grid has one data row") {
  const auto dir = scratch("one");
  const auto cfg = write_config(dir, std::string(kTwoLevel) +
                                         "[onephoton]\neps = 0.01\n[sweep]\naxis1 = eps\naxis1_from = 0.01\n"
                                         "axis1_to = 0.01\naxis1_points = 1\naxis2 = V_T2\naxis2_from = 3.141592653589793\n"
                                         "axis2_to = 3.141592653589793\naxis2_points = 1\nn_checkpoint = 1\n");
  const auto r = invoke("sweep", cfg, dir / "out");
  REQUIRE(r.code == kOk);
  const auto t = read_csv((dir / "out" / "grid.csv").string());
  CHECK(t.header == std::vector<std::string>{"eps", "V_T2", "infidelity_at_nT"});
  REQUIRE(t.columns[0].size() == 1);
  CHECK(t.columns[2][0] <= 1e-12);
  CHECK(fs::exists(dir / "out" / "grid.pgm"));
}

TEST_CASE("outputs are byte-identical across runs and worker counts") {
  const auto dir = scratch("repro");
  const auto cfg = write_config(dir, "[model]\ntype = dicke\ngating = always\n[sweep]\naxis1 = V_T2\n"
                                     "axis1_from = 5\naxis1_to = -5\naxis1_points = 11\naxis2 = eps\n"
                                     "axis2_from = -0.015\naxis2_to = 0.015\naxis2_points = 7\n");
  REQUIRE(invoke("sweep", cfg, dir / "a", false, 1).code == kOk);
  REQUIRE(invoke("sweep", cfg, dir / "b", false, 4).code == kOk);
  CHECK(slurp(dir / "a" / "grid.csv") == slurp(dir / "b" / "grid.csv"));
  CHECK(slurp(dir / "a" / "grid.pgm") == slurp(dir / "b" / "grid.pgm"));
}

TEST_CASE("existing outputs are kept unless forced") {
  const auto dir = scratch("force");
  REQUIRE(invoke("magic", recipe("magic_twolevel.cfg"), dir).code == kOk);
  const auto again = invoke("magic", recipe("magic_twolevel.cfg"), dir);
  CHECK(again.code == kConfig);
  CHECK(again.err.find("magic.csv") != std::string::npos);
  CHECK(invoke("magic", recipe("magic_twolevel.cfg"), dir, true).code == kOk);
}

TEST_CASE("magic: recipe locates pi") {
  const auto dir = scratch("magic");
  const auto r = invoke("magic", recipe("magic_twolevel.cfg"), dir);
  REQUIRE(r.code == kOk);
  REQUIRE(r.out.starts_with("V_T2="));
  CHECK(std::abs(std::stod(r.out.substr(5)) - std::numbers::pi) <= 1e-4);
  const auto t = read_csv((dir / "magic.csv").string());
  CHECK(std::abs(t.columns[0][0] - std::numbers::pi) <= 1e-4);

  const auto d = invoke("magic", recipe("magic_dicke_always.cfg"), scratch("magic_dicke"));
  REQUIRE(d.code == kOk);
  const double v = std::stod(d.out.substr(d.out.find('=') + 1));
  CHECK(v >= 2.6);
  CHECK(v <= 3.0);
}

TEST_CASE("magic: degenerate interval exits with the search-failure code") {
  const auto dir = scratch("magic33");
  const auto cfg = write_config(dir, std::string(kTwoLevel) + "[onephoton]\neps = 0.01\n[magic]\nlo = 3\nhi = 3\n");
  const auto r = invoke("magic", cfg, dir / "out");
  CHECK(r.code == kSearchFailure);
  CHECK(r.err.find("f(3)=") != std::string::npos);
}

TEST_CASE("fourier: error-free point prints a zero metric") {
  const auto dir = scratch("fourier0");
  const auto r = invoke("fourier", write_config(dir, kTwoLevel), dir / "out");
  REQUIRE(r.code == kOk);
  CHECK(r.out.find("peak_metric=0\n") != std::string::npos);
  CHECK(r.out.find("sidebands: none") != std::string::npos);
  const auto s = read_csv((dir / "out" / "spectrum.csv").string());
  CHECK(s.header == std::vector<std::string>{"nu", "magnitude"});
  CHECK(s.columns[0].size() == 64 * 64 / 2 + 1);

  const auto cfg = write_config(dir, std::string(kTwoLevel) + "[onephoton]\nV_T2 = 3.141592653589793\n");
  const auto m = invoke("fourier", cfg, dir / "magic");
  REQUIRE(m.code == kOk);
  const auto at = m.out.find("peak_metric=");
  CHECK(std::abs(std::stod(m.out.substr(at + 12))) <= 1e-12);
}

TEST_CASE("fourier: fig5a recipe shows two sidebands") {
  const auto r = invoke("fourier", recipe("fig5a.cfg"), scratch("fig5a"));
  REQUIRE(r.code == kOk);
  int bands = 0;
  for (std::size_t p = r.out.find("sideband nu="); p != std::string::npos; p = r.out.find("sideband nu=", p + 1))
    ++bands;
  CHECK(bands == 2);
}

TEST_CASE("fourier: undriven reference exits with code 4") {
  const auto dir = scratch("degenerate");
  const auto cfg = write_config(dir, std::string(kTwoLevel) + "[onephoton]\nomega_scale = 0\neps = 0.01\n");
  CHECK(invoke("fourier", cfg, dir / "out").code == kDegenerateReference);
}

TEST_CASE("simulate: integrator blow-up exits with code 3") {
  const auto dir = scratch("stiff");
  const auto cfg = write_config(dir, "[model]\ntype = stirap\n[stirap]\nsystems = 1\nomega0_TG = 200\ndt_step = 0.5\n");
  const auto r = invoke("simulate", cfg, dir / "out");
  CHECK(r.code == kNumeric);
  CHECK(r.err.find("period") != std::string::npos);
}

TEST_CASE("argv parsing") {
  const auto dir = scratch("argv");
  const std::string cfg = recipe("magic_twolevel.cfg");
  const std::string out = (dir / "out").string();
  {
    const char* argv[] = {"qcomp", "magic", "--config", cfg.c_str(), "--out", out.c_str(), "--seed", "7"};
    CHECK(qcomp::cli::main(8, const_cast<char**>(argv)) == kOk);
  }
  {
    const char* argv[] = {"qcomp", "magic"};
    CHECK(qcomp::cli::main(2, const_cast<char**>(argv)) == kConfig);
  }
  {
    const char* argv[] = {"qcomp", "frobnicate"};
    CHECK(qcomp::cli::main(2, const_cast<char**>(argv)) == kConfig);
  }
}
