#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nrsampler/geometry.hpp"

namespace nrs {

/// Diagnostics and estimates of one sampler run.
struct RunSummary {
  std::int64_t n_steps = 0;
  double running_mean = 0.0;        // (1/n) sum_l f(x^(l)), l = 1..n
  double asym_var_estimate = 0.0;   // batch-means estimate of the asymptotic variance
  std::int64_t transition_count = 0;
  std::map<int, std::int64_t> rk_histogram;  // RK steps -> number of projections
  double mean_intermediate_xi = 0.0;         // mean |xi| before projection
  double wall_time = 0.0;                    // seconds

  double mean_rk_steps() const;
};

/// Batch-means estimate of the asymptotic variance of the time average of a
/// series sampled every `time_step`. With b batches of m samples each the
/// estimate is m * time_step * Var(batch means). n_batches = 0 selects
/// floor(sqrt(length)). Trailing samples that do not fill a batch are dropped.
/// Throws std::invalid_argument when length < 2 * n_batches.
double batch_means_variance(std::span<const double> series, int n_batches = 0,
                            double time_step = 1.0);

/// Streaming form of batch_means_variance for a series of known length.
class BatchMeans {
 public:
  BatchMeans(std::int64_t total_length, int n_batches = 0);

  void add(double value);
  /// Estimate from the batches completed so far (0 if fewer than 2).
  double variance(double time_step = 1.0) const;
  int n_batches() const noexcept { return n_batches_; }
  std::int64_t batch_length() const noexcept { return batch_length_; }

 private:
  int n_batches_;
  std::int64_t batch_length_;
  std::int64_t in_batch_ = 0;
  double batch_sum_ = 0.0;
  std::vector<double> batch_means_;
};

/// Counts transitions between the regions |theta - pi/2| <= pi/4 and
/// |theta - 3pi/2| <= pi/4. A transition is an entry into one region when the
/// last region visited was the other one; time spent in neither region keeps
/// the last label.
class TransitionCounter {
 public:
  void observe(double theta);
  std::int64_t count() const noexcept { return count_; }

 private:
  int last_region_ = 0;  // 0: none yet, 1 or 2
  std::int64_t count_ = 0;
};

std::int64_t transition_count(std::span<const double> theta_series);

/// Normalised bins x bins histogram over [0, 2pi)^2 of (phi, theta) samples,
/// row-major in phi.
std::vector<double> angle_histogram(std::span<const TorusAngles> samples, int bins);

/// Target probabilities of the same bins for exp(-beta U) dphi dtheta,
/// integrated with `sub` x `sub` midpoint nodes per bin.
std::vector<double> target_histogram(const AngleFunction& potential, double beta, int bins,
                                     int sub = 8);

/// Total-variation distance 0.5 * sum |p - q| of two histograms.
double tv_distance(std::span<const double> p, std::span<const double> q);

/// Total-variation distance between the binned samples and the binned target
/// exp(-beta U) / Z. Needs at least 1e4 samples.
double histogram_tv_distance(std::span<const TorusAngles> samples,
                             const AngleFunction& potential, double beta, int bins = 32);

/// One row of an experiment table: statistics across independent runs.
struct ExperimentRow {
  std::string a_label;
  double h = 0.0;
  std::int64_t n = 0;
  int runs = 0;
  double mean_of_means = 0.0;
  double std_across_runs = 0.0;   // unbiased sample standard deviation
  double mean_rk_steps = 0.0;
  double mean_transitions = 0.0;
  double mean_intermediate_xi = 0.0;
  double mean_asym_var = 0.0;
  double runtime = 0.0;           // summed wall time of the runs
};

struct ExperimentTable {
  std::vector<ExperimentRow> rows;

  const ExperimentRow* find(const std::string& a_label, double h) const;
};

/// Aggregates at least two run summaries. Throws std::invalid_argument otherwise.
ExperimentRow aggregate_runs(std::span<const RunSummary> summaries);

/// sqrt(mean((running_mean - reference)^2)) over the runs.
double rms_error(std::span<const RunSummary> summaries, double reference);

/// Least-squares slope of log(y) against log(x).
double log_log_slope(std::span<const double> x, std::span<const double> y);

}  // namespace nrs
