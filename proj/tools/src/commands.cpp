#include "sampler_cli/commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "nrsampler/torus_problems.hpp"
#include "nrsampler/verify.hpp"
#include "sampler_cli/experiment.hpp"

namespace sampler_cli {

namespace {

bool open_output(const std::filesystem::path& path, std::ofstream& file, std::ostream& log) {
  file.open(path, std::ios::binary | std::ios::trunc);
  if (!file) {
    log << "error: cannot write " << path.string() << '\n';
    return false;
  }
  return true;
}

bool ensure_directory(const std::filesystem::path& dir, std::ostream& log) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    log << "error: cannot create " << dir.string() << ": " << ec.message() << '\n';
    return false;
  }
  return true;
}

}  // namespace

int cmd_experiment(const ExperimentArgs& args, std::ostream& log) {
  ExperimentSpec spec;
  int threads = 1;
  try {
    spec = load_experiment_spec(args.config);
    if (args.out_dir) spec.out_dir = *args.out_dir;
    threads = resolve_thread_count(args.threads, spec.threads);
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << '\n';
    return kConfigError;
  }
  if (!ensure_directory(spec.out_dir, log)) return kRunFailure;

  const ExperimentOutcome outcome = run_experiment(spec, threads);

  std::ofstream summary;
  std::ofstream runs;
  if (!open_output(spec.out_dir / "summary.csv", summary, log)) return kRunFailure;
  if (!open_output(spec.out_dir / "runs.csv", runs, log)) return kRunFailure;
  write_summary_csv(summary, outcome);
  write_runs_csv(runs, spec, outcome);
  summary.close();
  runs.close();
  if (!summary || !runs) {
    log << "error: failed writing output files\n";
    return kRunFailure;
  }

  for (const auto& record : outcome.runs) {
    if (!record.ok) {
      log << "run failure (A=" << spec.a_choices[record.a_index].label
          << ", h=" << spec.step_sizes[record.h_index] << ", run=" << record.run
          << "): " << record.error << '\n';
    }
  }
  return outcome.failed() ? kRunFailure : kSuccess;
}

int cmd_verify(const VerifyArgs& args, std::ostream& log) {
  if (args.points < 0) {
    log << "config error: --points must be >= 0\n";
    return kConfigError;
  }
  nrs::VerifyOptions options;
  options.seed = args.seed;
  options.torus_points = args.points;
  options.inject_fault = args.inject_fault;
  const auto reports = nrs::run_verify_suite(options);

  if (!ensure_directory(args.out_dir, log)) return kRunFailure;
  std::ofstream file;
  if (!open_output(args.out_dir / "verify.csv", file, log)) return kRunFailure;
  file << "check,max_abs_error,tolerance,passed\r\n";
  bool all_passed = true;
  char line[256];
  for (const auto& report : reports) {
    std::snprintf(line, sizeof line, "%.6e,%.1e,%s", report.max_abs_error, report.tolerance,
                  report.passed ? "true" : "false");
    file << csv_field(report.name) << ',' << line << "\r\n";
    log << (report.passed ? "pass " : "FAIL ") << report.name << "  error " << line << '\n';
    all_passed = all_passed && report.passed;
  }
  file.close();
  if (!file) {
    log << "error: failed writing verify.csv\n";
    return kRunFailure;
  }
  return all_passed ? kSuccess : kRunFailure;
}

int cmd_quadrature(const std::string& test, int grid, std::ostream& out, std::ostream& log) {
  const auto problem = nrs::make_problem(test);
  if (!problem) {
    log << "config error: unknown test '" << test << "' (expected test1, test2 or uniform)\n";
    return kConfigError;
  }
  if (grid < 16) {
    log << "config error: --grid must be >= 16\n";
    return kConfigError;
  }
  const double value = problem->reference_value(grid);
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.6f", value);
  std::string text = buffer;
  if (text == "-0.000000") text = "0.000000";
  out << text << '\n';
  return kSuccess;
}

}  // namespace sampler_cli
