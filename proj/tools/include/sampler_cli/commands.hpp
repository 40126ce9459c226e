#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

namespace sampler_cli {

enum ExitCode : int { kSuccess = 0, kRunFailure = 1, kConfigError = 2 };

struct ExperimentArgs {
  std::filesystem::path config;
  std::optional<std::filesystem::path> out_dir;  // overrides the config
  std::optional<int> threads;
};

/// Runs the configured experiment and writes summary.csv and runs.csv.
int cmd_experiment(const ExperimentArgs& args, std::ostream& log);

struct VerifyArgs {
  std::uint64_t seed = 2024;
  int points = 1000;
  std::filesystem::path out_dir = ".";
  bool inject_fault = false;
};

/// Runs the identity suite and writes verify.csv
/// (check,max_abs_error,tolerance,passed). Exit 0 iff every check passes.
int cmd_verify(const VerifyArgs& args, std::ostream& log);

/// Prints E_mu[f] of the named torus test to six decimals.
int cmd_quadrature(const std::string& test, int grid, std::ostream& out, std::ostream& log);

}  // namespace sampler_cli
