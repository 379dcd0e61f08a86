#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

/// Subcommands of the qcomp executable. Exit codes: 0 success, 2 usage or
/// configuration error (including refusing to overwrite), 3 numerical
/// failure, 4 degenerate spectral reference, 5 magic search failure,
/// 1 anything else (e.g. unwritable output).
namespace qcomp::cli {

enum ExitCode : int {
  kOk = 0,
  kOther = 1,
  kConfig = 2,
  kNumeric = 3,
  kDegenerateReference = 4,
  kSearchFailure = 5,
};

struct RunManifest {
  std::string subcommand;
  std::string config_path;
  std::string output_dir = ".";
  int jobs = 0;
  bool force = false;
  std::optional<std::uint64_t> seed;
};

int cmd_simulate(const RunManifest& m, std::ostream& out, std::ostream& err);
int cmd_sweep(const RunManifest& m, std::ostream& out, std::ostream& err);
int cmd_fourier(const RunManifest& m, std::ostream& out, std::ostream& err);
int cmd_magic(const RunManifest& m, std::ostream& out, std::ostream& err);

/// Dispatches on m.subcommand.
int run(const RunManifest& m, std::ostream& out, std::ostream& err);

/// Parses argv and runs.
int main(int argc, char** argv);

}  // namespace qcomp::cli
