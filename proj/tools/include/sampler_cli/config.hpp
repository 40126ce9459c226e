#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nrsampler/linalg.hpp"
#include "nrsampler/projection.hpp"
#include "nrsampler/sampler.hpp"

namespace sampler_cli {

/// Invalid or unreadable experiment configuration (exit status 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One skew-symmetric matrix of the experiment with its CSV label.
struct AChoice {
  std::string label;  // "zero", "abar" or "custom"
  nrs::Matrix matrix;
};

/// Contents of an experiment configuration file.
///
/// The file holds one `key = value` pair per line; `#` starts a comment.
/// Lists are comma separated. Keys:
///   experiment        test1 | test2 | custom            (required)
///   h                 list of step sizes                (default: 2e-2,1e-2,5e-3,1e-3,5e-4)
///   A                 list of zero | abar | custom      (default: zero)
///   A_custom          a12, a13, a23: upper triangle of the custom matrix
///   T                 total time per run                (default: 1e4)
///   runs              independent runs per cell         (default: 10)
///   seed              base seed                         (default: 0)
///   noise             gaussian | rademacher | uniform_bounded
///   beta              inverse temperature override
///   potential         test1 | test2 | zero              (custom experiment)
///   observable        test1 | test2 | cos_phi           (custom experiment)
///   major_radius, minor_radius                          (default: 1, 0.5)
///   kappa, initial_dt, eps_tol, max_rk_steps, halving   projection overrides
///   timing            on | off; off writes runtime_s as 0 (default: on)
///   out               output directory                  (default: .)
///   threads           worker count                      (default: hardware)
struct ExperimentSpec {
  std::string experiment;
  std::vector<double> step_sizes{2e-2, 1e-2, 5e-3, 1e-3, 5e-4};
  std::vector<AChoice> a_choices;
  double total_time = 1e4;
  int runs = 10;
  std::uint64_t seed = 0;
  nrs::NoiseKind noise = nrs::NoiseKind::gaussian;
  std::optional<double> beta;
  std::string potential;
  std::string observable;
  double major_radius = 1.0;
  double minor_radius = 0.5;
  nrs::ProjectionConfig projection{};
  bool timing = true;
  std::filesystem::path out_dir = ".";
  std::optional<int> threads;
};

/// Parses configuration text. `origin` names the source in error messages.
ExperimentSpec parse_experiment_spec(const std::string& text,
                                     const std::string& origin = "config");

/// Reads and parses a configuration file.
ExperimentSpec load_experiment_spec(const std::filesystem::path& path);

}  // namespace sampler_cli
