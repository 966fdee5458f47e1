#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace qlp::cli {

/// Exit codes.
enum Exit : int { kOk = 0, kError = 1, kNegative = 2, kInconsistent = 3 };

struct RunConfig {
  /// validate, haar, irreps, fourier, improve, ritter, schur, cesaro,
  /// hopf-image, freeprod-verify, selftest.
  std::string subcommand;
  std::vector<std::string> inputs;
  std::optional<double> tol;
  std::uint64_t seed = 1;
  /// Per-command default when unset (10⁴ for improve, 200 for freeprod).
  std::optional<int> samples;
  std::string report = "text";
  /// Report destination; empty writes to the output stream.
  std::string output;

  // ritter
  std::vector<int> support;
  // fourier
  bool element = false;
  // freeprod verify
  std::vector<std::string> components;
  std::vector<std::string> maps;
  std::string q = "auto";
  int length = 3;
};

/// Runs one command. Reports go to `out` (or cfg.output), diagnostics to `err`.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses the command line into a RunConfig and runs it.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Quick invariant suites; one PASS/FAIL line each. True when all pass.
bool selftest(std::ostream& out, std::uint64_t seed = 1);

}  // namespace qlp::cli
