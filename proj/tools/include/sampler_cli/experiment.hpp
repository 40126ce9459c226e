#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "nrsampler/stats.hpp"
#include "nrsampler/torus_problems.hpp"
#include "sampler_cli/config.hpp"

namespace sampler_cli {

/// Torus problem described by the spec (named test, or custom assembly of
/// potential, observable and beta).
nrs::TorusProblem build_problem(const ExperimentSpec& spec);

/// Seed of run `run` in the cell (A index, h index).
std::uint64_t run_seed(std::uint64_t base, std::size_t a_index, std::size_t h_index,
                       std::size_t run);

struct RunRecord {
  std::size_t a_index = 0;
  std::size_t h_index = 0;
  int run = 0;
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;  // set when !ok
  nrs::RunSummary summary;
};

struct CellResult {
  std::string a_label;
  double h = 0.0;
  std::int64_t n = 0;
  bool failed = false;
  nrs::ExperimentRow row;  // valid when !failed
};

struct ExperimentOutcome {
  std::vector<RunRecord> runs;  // ordered by (A, h, run)
  std::vector<CellResult> cells;
  bool failed() const;
};

/// Runs every (A, h, run) chain on `threads` workers. Run failures are
/// recorded, not thrown.
ExperimentOutcome run_experiment(const ExperimentSpec& spec, int threads);

std::string csv_field(const std::string& text);

/// summary.csv: A_label,h,n,mean_f,std_f,mean_xi_half,mean_rk_steps,transitions,runtime_s.
/// A failed cell is written as a marker row whose A_label ends in ":FAILED"
/// and whose statistics are empty.
void write_summary_csv(std::ostream& out, const ExperimentOutcome& outcome);

/// runs.csv: one row per chain with its seed, estimates and status.
void write_runs_csv(std::ostream& out, const ExperimentSpec& spec,
                    const ExperimentOutcome& outcome);

/// Worker count: SAMPLER_THREADS if set, else the flag, else the config
/// value, else the hardware concurrency. Throws ConfigError on a malformed
/// value.
int resolve_thread_count(std::optional<int> flag, std::optional<int> config);

}  // namespace sampler_cli
