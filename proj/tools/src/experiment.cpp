#include "sampler_cli/experiment.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <thread>

#include "nrsampler/errors.hpp"

namespace sampler_cli {

nrs::TorusProblem build_problem(const ExperimentSpec& spec) {
  const double R = spec.major_radius;
  const double r = spec.minor_radius;
  if (spec.experiment != "custom") {
    nrs::TorusProblem problem = *nrs::make_problem(spec.experiment, R, r);
    if (spec.beta) problem.beta = *spec.beta;
    return problem;
  }
  auto named = [&](const std::string& name) {
    if (name == "zero" || name == "cos_phi") return nrs::make_uniform(R, r);
    return *nrs::make_problem(name, R, r);
  };
  nrs::TorusProblem problem = named(spec.potential);
  const nrs::TorusProblem source = named(spec.observable);
  problem.name = "custom";
  problem.observable = source.observable;
  problem.observable_angles = source.observable_angles;
  problem.beta = *spec.beta;
  return problem;
}

std::uint64_t run_seed(std::uint64_t base, std::size_t a_index, std::size_t h_index,
                       std::size_t run) {
  return nrs::derive_seed(base, {a_index, h_index, run});
}

bool ExperimentOutcome::failed() const {
  for (const auto& cell : cells)
    if (cell.failed) return true;
  return false;
}

ExperimentOutcome run_experiment(const ExperimentSpec& spec, int threads) {
  const nrs::TorusProblem problem = build_problem(spec);
  std::vector<nrs::DynamicsSpec> dynamics;
  for (const auto& choice : spec.a_choices) dynamics.push_back(problem.dynamics(choice.matrix));

  ExperimentOutcome outcome;
  for (std::size_t a = 0; a < spec.a_choices.size(); ++a) {
    for (std::size_t h = 0; h < spec.step_sizes.size(); ++h) {
      for (int run = 0; run < spec.runs; ++run) {
        RunRecord record;
        record.a_index = a;
        record.h_index = h;
        record.run = run;
        record.seed = run_seed(spec.seed, a, h, static_cast<std::size_t>(run));
        outcome.runs.push_back(record);
      }
    }
  }

  nrs::RunOptions options;
  options.angles = [&problem](const nrs::Vector& x) { return problem.surface.angles(x); };

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < outcome.runs.size(); i = next++) {
      RunRecord& record = outcome.runs[i];
      const nrs::DynamicsSpec& dyn = dynamics[record.a_index];
      nrs::SchemeConfig scheme;
      scheme.step_size = spec.step_sizes[record.h_index];
      scheme.total_time = spec.total_time;
      scheme.noise = spec.noise;
      scheme.seed = record.seed;
      try {
        const nrs::Vector x0 = nrs::default_initial_state(problem.surface, dyn, spec.projection);
        record.summary = nrs::run(problem.surface, dyn, spec.projection, scheme, x0,
                                  problem.observable, options)
                             .summary;
        if (!spec.timing) record.summary.wall_time = 0.0;
        record.ok = true;
      } catch (const std::exception& e) {
        record.ok = false;
        record.error = e.what();
      }
    }
  };
  const int workers = std::max(1, std::min<int>(threads, static_cast<int>(outcome.runs.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < workers; ++t) pool.emplace_back(worker);
  worker();
  for (auto& thread : pool) thread.join();

  std::size_t index = 0;
  for (std::size_t a = 0; a < spec.a_choices.size(); ++a) {
    for (std::size_t h = 0; h < spec.step_sizes.size(); ++h) {
      CellResult cell;
      cell.a_label = spec.a_choices[a].label;
      cell.h = spec.step_sizes[h];
      cell.n = std::llround(spec.total_time / cell.h);
      std::vector<nrs::RunSummary> summaries;
      for (int run = 0; run < spec.runs; ++run, ++index) {
        const RunRecord& record = outcome.runs[index];
        if (!record.ok) cell.failed = true;
        summaries.push_back(record.summary);
      }
      if (!cell.failed) {
        if (summaries.size() >= 2) {
          cell.row = nrs::aggregate_runs(summaries);
        } else {
          const nrs::RunSummary& s = summaries.front();
          cell.row.runs = 1;
          cell.row.n = s.n_steps;
          cell.row.mean_of_means = s.running_mean;
          cell.row.mean_rk_steps = s.mean_rk_steps();
          cell.row.mean_transitions = static_cast<double>(s.transition_count);
          cell.row.mean_intermediate_xi = s.mean_intermediate_xi;
          cell.row.mean_asym_var = s.asym_var_estimate;
          cell.row.runtime = s.wall_time;
        }
        cell.row.a_label = cell.a_label;
        cell.row.h = cell.h;
      }
      outcome.cells.push_back(cell);
    }
  }
  return outcome;
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\r\n") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char c : text) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

namespace {

std::string num(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.10g", value == 0.0 ? 0.0 : value);
  return buffer;
}

}  // namespace

void write_summary_csv(std::ostream& out, const ExperimentOutcome& outcome) {
  out << "A_label,h,n,mean_f,std_f,mean_xi_half,mean_rk_steps,transitions,runtime_s\r\n";
  for (const auto& cell : outcome.cells) {
    if (cell.failed) {
      out << csv_field(cell.a_label + ":FAILED") << ',' << num(cell.h) << ',' << cell.n
          << ",,,,,,\r\n";
      continue;
    }
    const nrs::ExperimentRow& row = cell.row;
    out << csv_field(cell.a_label) << ',' << num(cell.h) << ',' << cell.n << ','
        << num(row.mean_of_means) << ',' << num(row.std_across_runs) << ','
        << num(row.mean_intermediate_xi) << ',' << num(row.mean_rk_steps) << ','
        << num(row.mean_transitions) << ',' << num(row.runtime) << "\r\n";
  }
}

void write_runs_csv(std::ostream& out, const ExperimentSpec& spec,
                    const ExperimentOutcome& outcome) {
  out << "A_label,h,run,seed,n,mean_f,asym_var,mean_xi_half,mean_rk_steps,transitions,"
         "runtime_s,status\r\n";
  for (const auto& record : outcome.runs) {
    const double h = spec.step_sizes[record.h_index];
    out << csv_field(spec.a_choices[record.a_index].label) << ',' << num(h) << ','
        << record.run << ',' << record.seed << ',' << std::llround(spec.total_time / h) << ',';
    if (record.ok) {
      const nrs::RunSummary& s = record.summary;
      out << num(s.running_mean) << ',' << num(s.asym_var_estimate) << ','
          << num(s.mean_intermediate_xi) << ',' << num(s.mean_rk_steps()) << ','
          << s.transition_count << ',' << num(s.wall_time) << ",ok\r\n";
    } else {
      out << ",,,,,," << csv_field("failed: " + record.error) << "\r\n";
    }
  }
}

int resolve_thread_count(std::optional<int> flag, std::optional<int> config) {
  if (const char* env = std::getenv("SAMPLER_THREADS"); env != nullptr && *env != '\0') {
    const std::string text(env);
    int value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || value < 1) {
      throw ConfigError("SAMPLER_THREADS must be a positive integer, got '" + text + "'");
    }
    return value;
  }
  if (flag) {
    if (*flag < 1) throw ConfigError("--threads must be >= 1");
    return *flag;
  }
  if (config) return *config;
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace sampler_cli
