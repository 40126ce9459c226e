// Acceptance run: one PASS/FAIL line per criterion, plus INFO lines with the
// supporting measurements. The exit status is 0 whenever every criterion was
// evaluated; the verdicts are in the output.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nrsampler/stats.hpp"
#include "nrsampler/torus_problems.hpp"
#include "nrsampler/verify.hpp"
#include "sampler_cli/experiment.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Context {
  int threads = 1;
  double scale = 1.0;  // multiplies every simulated time span
  std::uint64_t seed = 20240601;
  int passed = 0;
  int failed = 0;
};

std::FILE* g_report = nullptr;

void emit(const std::string& line) {
  std::printf("%s\n", line.c_str());
  std::fflush(stdout);
  if (g_report != nullptr) {
    std::fprintf(g_report, "%s\n", line.c_str());
    std::fflush(g_report);
  }
}

void verdict(Context& ctx, int id, bool pass, const std::string& text) {
  emit(std::string(pass ? "PASS" : "FAIL") + " C" + std::to_string(id) + " " + text);
  (pass ? ctx.passed : ctx.failed)++;
}

void info(int id, const std::string& text) { emit("INFO C" + std::to_string(id) + " " + text); }

std::string fmt(const char* format, auto... args) {
  char buffer[512];
  std::snprintf(buffer, sizeof buffer, format, args...);
  return buffer;
}

sampler_cli::ExperimentSpec make_spec(const std::string& experiment,
                                      std::vector<double> step_sizes,
                                      const std::vector<std::string>& a_labels, double total_time,
                                      int runs, std::uint64_t seed) {
  sampler_cli::ExperimentSpec spec;
  spec.experiment = experiment;
  spec.step_sizes = std::move(step_sizes);
  for (const auto& label : a_labels) {
    spec.a_choices.push_back(
        {label, label == "abar" ? nrs::abar_matrix() : nrs::Matrix(nrs::Matrix::Zero(3, 3))});
  }
  spec.total_time = total_time;
  spec.runs = runs;
  spec.seed = seed;
  return spec;
}

/// Runs the spec and returns its outcome; a failed cell is reported and
/// leaves `ok` false.
sampler_cli::ExperimentOutcome run_cells(const Context& ctx, const sampler_cli::ExperimentSpec& spec,
                                         int id, bool& ok) {
  sampler_cli::ExperimentOutcome outcome = sampler_cli::run_experiment(spec, ctx.threads);
  ok = !outcome.failed();
  for (const auto& record : outcome.runs) {
    if (!record.ok) info(id, "run failure: " + record.error);
  }
  return outcome;
}

std::vector<nrs::RunSummary> cell_summaries(const sampler_cli::ExperimentOutcome& outcome,
                                            std::size_t a_index, std::size_t h_index) {
  std::vector<nrs::RunSummary> out;
  for (const auto& record : outcome.runs) {
    if (record.a_index == a_index && record.h_index == h_index) out.push_back(record.summary);
  }
  return out;
}

void criterion1(Context& ctx) {
  const auto start = Clock::now();
  const double v1 = nrs::make_test1().reference_value(512);
  const double v2 = nrs::make_test2().reference_value(512);
  const double elapsed = seconds_since(start);
  const bool pass = std::abs(v1 - 0.303) <= 0.002 && std::abs(v2 - 1.923) <= 0.002 && elapsed < 5;
  verdict(ctx, 1, pass,
          fmt("quadrature test1=%.6f (0.303) test2=%.6f (1.923) grid 512 in %.2f s", v1, v2,
              elapsed));
}

void criterion2(Context& ctx) {
  const auto start = Clock::now();
  const auto spec = make_spec("test1", {5e-3}, {"zero"}, 1e4 * ctx.scale, 10, ctx.seed + 2);
  bool ok = false;
  const auto outcome = run_cells(ctx, spec, 2, ok);
  if (!ok) {
    verdict(ctx, 2, false, "run failure");
    return;
  }
  const auto summaries = cell_summaries(outcome, 0, 0);
  const nrs::ExperimentRow row = nrs::aggregate_runs(summaries);
  const double se = row.std_across_runs / std::sqrt(static_cast<double>(row.runs));
  const double se_bm = std::sqrt(row.mean_asym_var / (spec.total_time * row.runs));
  const double truth = nrs::make_test1().reference_value(512);
  const double z = (row.mean_of_means - truth) / se;
  info(2, fmt("per-run means std %.4g, batch-means SE %.3g, mean RK %.2f, %.0f s",
              row.std_across_runs, se_bm, row.mean_rk_steps, seconds_since(start)));
  verdict(ctx, 2, std::abs(z) <= 3.0,
          fmt("test1 A=0 h=5e-3 T=%g x10: pooled mean %.5f vs %.5f, SE %.3g, |z| = %.1f (<= 3)",
              spec.total_time, row.mean_of_means, truth, se, std::abs(z)));
}

void criterion3(Context& ctx) {
  const auto start = Clock::now();
  const std::vector<double> hs{2e-2, 1e-2, 5e-3};
  const auto spec = make_spec("test1", hs, {"zero"}, 2e3 * ctx.scale, 10, ctx.seed + 3);
  bool ok = false;
  const auto outcome = run_cells(ctx, spec, 3, ok);
  if (!ok) {
    verdict(ctx, 3, false, "run failure");
    return;
  }
  const double truth = nrs::make_test1().reference_value(512);
  std::vector<double> stds;
  std::vector<double> rmses;
  std::string table;
  for (std::size_t i = 0; i < hs.size(); ++i) {
    const auto summaries = cell_summaries(outcome, 0, i);
    const auto row = nrs::aggregate_runs(summaries);
    stds.push_back(row.std_across_runs);
    rmses.push_back(nrs::rms_error(summaries, truth));
    table += fmt(" h=%g: mean %.4f std %.4f rmse %.4f;", hs[i], row.mean_of_means,
                 row.std_across_runs, rmses.back());
  }
  const double slope = nrs::log_log_slope(hs, stds);
  const double rmse_slope = nrs::log_log_slope(hs, rmses);
  info(3, fmt("%s %.0f s", table.c_str(), seconds_since(start)));
  info(3, fmt("log-log slope of rms error about 0.3031 vs h: %.2f", rmse_slope));
  verdict(ctx, 3, slope >= 0.7 && slope <= 1.3,
          fmt("test1 T=%g x10: log-log slope of std-across-runs vs h = %.2f (in [0.7, 1.3])",
              spec.total_time, slope));
}

void criterion4(Context& ctx) {
  const auto start = Clock::now();
  const int repetitions = 10;
  const double total_time = 5e3 * ctx.scale;
  int std_wins = 0;
  double zero_transitions = 0.0;
  double abar_transitions = 0.0;
  bool transitions_ok = false;
  int var_wins = 0;
  int var_pairs = 0;
  for (int rep = 0; rep < repetitions; ++rep) {
    const std::uint64_t seed = ctx.seed + 400 + static_cast<std::uint64_t>(rep);
    bool ok_zero = false;
    bool ok_abar = false;
    // Separate experiments with one A each share the same noise streams.
    const auto zero = run_cells(ctx, make_spec("test2", {2e-2}, {"zero"}, total_time, 10, seed),
                                4, ok_zero);
    const auto abar = run_cells(ctx, make_spec("test2", {2e-2}, {"abar"}, total_time, 10, seed),
                                4, ok_abar);
    if (!ok_zero || !ok_abar) {
      verdict(ctx, 4, false, fmt("run failure in repetition %d", rep));
      return;
    }
    const auto s0 = cell_summaries(zero, 0, 0);
    const auto s1 = cell_summaries(abar, 0, 0);
    const auto r0 = nrs::aggregate_runs(s0);
    const auto r1 = nrs::aggregate_runs(s1);
    if (r1.std_across_runs < r0.std_across_runs) ++std_wins;
    zero_transitions += r0.mean_transitions;
    abar_transitions += r1.mean_transitions;
    if (rep == 0) {
      transitions_ok =
          r1.mean_transitions > 0.0 && r1.mean_transitions >= 2.0 * r0.mean_transitions;
      info(4, fmt("repetition 0 transitions per run: A=0 %.2f, A=abar %.2f",
                  r0.mean_transitions, r1.mean_transitions));
    }
    for (std::size_t i = 0; i < s0.size(); ++i) {
      ++var_pairs;
      if (s1[i].asym_var_estimate < s0[i].asym_var_estimate) ++var_wins;
    }
    info(4, fmt("repetition %d: std A=0 %.4f, A=abar %.4f; mean A=0 %.4f, A=abar %.4f", rep,
                r0.std_across_runs, r1.std_across_runs, r0.mean_of_means, r1.mean_of_means));
  }
  info(4, fmt("all repetitions: transitions per run A=0 %.2f, A=abar %.2f; %.0f s",
              zero_transitions / repetitions, abar_transitions / repetitions,
              seconds_since(start)));
  info(4, fmt("batch-means asymptotic variance smaller for A=abar in %d/%d matched-noise pairs",
              var_wins, var_pairs));
  verdict(ctx, 4, transitions_ok && std_wins >= 8,
          fmt("test2 h=2e-2 T=%g x10: abar >= 2x transitions: %s; std smaller for abar in %d/%d "
              "repetitions (>= 8)",
              total_time, transitions_ok ? "yes" : "no", std_wins, repetitions));
}

/// Test-2 runs over all configured step sizes, shared by criteria 5 and 6.
struct Test2Sweep {
  std::vector<double> hs{2e-2, 1e-2, 5e-3, 1e-3, 5e-4};
  std::array<std::vector<double>, 2> xi;  // [A][h]
  std::array<std::vector<double>, 2> rk;
  bool ok = false;
};

Test2Sweep run_sweep(const Context& ctx) {
  const auto start = Clock::now();
  Test2Sweep sweep;
  const auto spec =
      make_spec("test2", sweep.hs, {"zero", "abar"}, 1e3 * ctx.scale, 1, ctx.seed + 5);
  const auto outcome = run_cells(ctx, spec, 5, sweep.ok);
  if (!sweep.ok) return sweep;
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t h = 0; h < sweep.hs.size(); ++h) {
      const auto summaries = cell_summaries(outcome, a, h);
      sweep.xi[a].push_back(summaries.front().mean_intermediate_xi);
      sweep.rk[a].push_back(summaries.front().mean_rk_steps());
    }
  }
  info(5, fmt("test2 sweep T=%g per cell, %.0f s", spec.total_time, seconds_since(start)));
  return sweep;
}

void criterion5(Context& ctx, const Test2Sweep& sweep) {
  if (!sweep.ok) {
    verdict(ctx, 5, false, "run failure");
    return;
  }
  const std::array<const char*, 2> labels{"0", "abar"};
  const double ref_coarse = 2.1e-1;
  const double ref_fine = 3.2e-2;
  bool pass = true;
  std::string text;
  for (std::size_t a = 0; a < 2; ++a) {
    const double coarse = sweep.xi[a].front();
    const double fine = sweep.xi[a].back();
    pass = pass && std::abs(coarse / ref_coarse - 1.0) <= 0.3 &&
           std::abs(fine / ref_fine - 1.0) <= 0.3;
    text += fmt(" A=%s: %.3g (h=2e-2), %.3g (h=5e-4);", labels[a], coarse, fine);
  }
  std::string all;
  for (std::size_t h = 0; h < sweep.hs.size(); ++h) {
    all += fmt(" h=%g: %.3g/%.3g", sweep.hs[h], sweep.xi[0][h], sweep.xi[1][h]);
  }
  info(5, "mean |xi| before projection (A=0/abar):" + all);
  verdict(ctx, 5, pass,
          "mean |xi(x^(l+1/2))| within 30% of 0.21 and 0.032:" + text);
}

void criterion6(Context& ctx, const Test2Sweep& sweep) {
  if (!sweep.ok) {
    verdict(ctx, 6, false, "run failure");
    return;
  }
  bool in_range = true;
  bool increasing = true;
  int abar_larger = 0;
  std::string text;
  for (std::size_t h = 0; h < sweep.hs.size(); ++h) {
    for (std::size_t a = 0; a < 2; ++a) {
      in_range = in_range && sweep.rk[a][h] >= 10.0 && sweep.rk[a][h] <= 40.0;
      // hs are listed in decreasing order
      if (h > 0) increasing = increasing && sweep.rk[a][h] < sweep.rk[a][h - 1];
    }
    if (sweep.rk[1][h] > sweep.rk[0][h]) ++abar_larger;
    text += fmt(" h=%g: %.1f/%.1f", sweep.hs[h], sweep.rk[0][h], sweep.rk[1][h]);
  }
  const int cells = static_cast<int>(sweep.hs.size());
  info(6, "mean RK steps (A=0/abar):" + text);
  verdict(ctx, 6, in_range && increasing && abar_larger == cells,
          fmt("RK steps in [10, 40]: %s; increasing with h: %s; abar > 0 at %d/%d step sizes",
              in_range ? "yes" : "no", increasing ? "yes" : "no", abar_larger, cells));
}

void criterion7(Context& ctx) {
  const auto start = Clock::now();
  const nrs::TorusProblem problem = nrs::make_test1();
  const nrs::DynamicsSpec dyn = problem.dynamics(nrs::Matrix::Zero(3, 3));
  const nrs::ProjectionConfig proj;
  const int bins = 32;
  const double cell = 2.0 * std::numbers::pi / bins;
  std::vector<double> counts(static_cast<std::size_t>(bins * bins), 0.0);
  std::int64_t lower_well = 0;
  nrs::RunOptions options;
  options.on_state = [&](std::int64_t, const nrs::Vector& x) {
    const nrs::TorusAngles a = problem.surface.angles(x);
    const int i = std::min(bins - 1, static_cast<int>(a.phi / cell));
    const int j = std::min(bins - 1, static_cast<int>(a.theta / cell));
    counts[static_cast<std::size_t>(i * bins + j)] += 1.0;
    if (std::cos(a.phi) < 0.0) ++lower_well;
  };
  nrs::SchemeConfig scheme;
  scheme.step_size = 1e-3;
  scheme.total_time = 1e4 * ctx.scale;
  scheme.seed = nrs::derive_seed(ctx.seed + 7, {0});
  const nrs::Vector x0 = nrs::default_initial_state(problem.surface, dyn, proj);
  nrs::RunSummary summary;
  try {
    summary = nrs::run(problem.surface, dyn, proj, scheme, x0, problem.observable, options).summary;
  } catch (const std::exception& e) {
    verdict(ctx, 7, false, std::string("run failure: ") + e.what());
    return;
  }
  const double n = static_cast<double>(summary.n_steps);
  for (double& c : counts) c /= n;
  const auto target = nrs::target_histogram(problem.potential_angles, problem.beta, bins);
  const double tv = nrs::tv_distance(counts, target);
  info(7, fmt("fraction of samples with cos(phi) < 0: %.4f (target 0.5); %.0f s",
              static_cast<double>(lower_well) / n, seconds_since(start)));
  verdict(ctx, 7, tv < 0.05,
          fmt("test1 A=0 h=1e-3 T=%g: TV distance %.4f on 32x32 bins (< 0.05)",
              scheme.total_time, tv));
}

void criterion8(Context& ctx) {
  const auto start = Clock::now();
  const auto reports = nrs::run_verify_suite(nrs::VerifyOptions{});
  const double elapsed = seconds_since(start);
  int failed = 0;
  for (const auto& r : reports) {
    if (!r.passed) {
      ++failed;
      info(8, fmt("%s error %.3e tolerance %.1e", r.name.c_str(), r.max_abs_error, r.tolerance));
    }
  }
  verdict(ctx, 8, failed == 0 && elapsed < 120.0,
          fmt("verify suite: %d/%zu checks pass over 1000 torus points and synthetic cases "
              "in %.1f s (< 120 s)",
              static_cast<int>(reports.size()) - failed, reports.size(), elapsed));
}

}  // namespace

int main(int argc, char** argv) {
  Context ctx;
  std::vector<int> only;
  CLI::App app{"Acceptance criteria of the constrained non-reversible sampler"};
  app.add_option("--scale", ctx.scale, "Multiplier for every simulated time span")
      ->check(CLI::PositiveNumber);
  app.add_option("--only", only, "Criteria to evaluate (default: all)")->check(CLI::Range(1, 8));
  app.add_option("--seed", ctx.seed, "Base seed");
  std::string report_path;
  app.add_option("--report", report_path, "Also write the output lines to this file");
  CLI11_PARSE(app, argc, argv);
  if (!report_path.empty()) {
    g_report = std::fopen(report_path.c_str(), "w");
    if (g_report == nullptr) {
      std::fprintf(stderr, "cannot open %s\n", report_path.c_str());
      return 2;
    }
  }
  ctx.threads = sampler_cli::resolve_thread_count(std::nullopt, std::nullopt);

  const std::set<int> selected(only.begin(), only.end());
  auto wanted = [&](int id) { return selected.empty() || selected.count(id) > 0; };
  const auto start = Clock::now();
  emit(fmt("acceptance: %d thread(s), time scale %g", ctx.threads, ctx.scale));

  if (wanted(1)) criterion1(ctx);
  if (wanted(2)) criterion2(ctx);
  if (wanted(3)) criterion3(ctx);
  if (wanted(4)) criterion4(ctx);
  if (wanted(5) || wanted(6)) {
    const Test2Sweep sweep = run_sweep(ctx);
    if (wanted(5)) criterion5(ctx, sweep);
    if (wanted(6)) criterion6(ctx, sweep);
  }
  if (wanted(7)) criterion7(ctx);
  if (wanted(8)) criterion8(ctx);

  emit(fmt("acceptance: %d passed, %d failed, %.0f s", ctx.passed, ctx.failed,
           seconds_since(start)));
  if (g_report != nullptr) std::fclose(g_report);
  return 0;
}
