#include "nrsampler/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace nrs {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;

double sample_variance(std::span<const double> values) {
  const double n = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double sum_sq = 0.0;
  for (double v : values) sum_sq += (v - mean) * (v - mean);
  return sum_sq / (n - 1.0);
}

int default_batches(std::int64_t length) {
  return static_cast<int>(std::floor(std::sqrt(static_cast<double>(length))));
}

}  // namespace

double RunSummary::mean_rk_steps() const {
  double total = 0.0;
  std::int64_t count = 0;
  for (const auto& [steps, freq] : rk_histogram) {
    total += static_cast<double>(steps) * static_cast<double>(freq);
    count += freq;
  }
  return count == 0 ? 0.0 : total / static_cast<double>(count);
}

// --- batch means -----------------------------------------------------------

double batch_means_variance(std::span<const double> series, int n_batches, double time_step) {
  const auto length = static_cast<std::int64_t>(series.size());
  if (n_batches == 0) n_batches = default_batches(length);
  if (n_batches < 2 || length < 2 * static_cast<std::int64_t>(n_batches)) {
    throw std::invalid_argument("batch_means_variance: series too short for the batch count");
  }
  const std::int64_t batch_length = length / n_batches;
  std::vector<double> means(static_cast<std::size_t>(n_batches));
  for (int b = 0; b < n_batches; ++b) {
    const auto first = series.begin() + b * batch_length;
    means[static_cast<std::size_t>(b)] =
        std::accumulate(first, first + batch_length, 0.0) / static_cast<double>(batch_length);
  }
  return static_cast<double>(batch_length) * time_step * sample_variance(means);
}

BatchMeans::BatchMeans(std::int64_t total_length, int n_batches)
    : n_batches_(n_batches == 0 ? std::max(default_batches(total_length), 1) : n_batches),
      batch_length_(std::max<std::int64_t>(total_length / n_batches_, 1)) {
  batch_means_.reserve(static_cast<std::size_t>(n_batches_));
}

void BatchMeans::add(double value) {
  if (static_cast<int>(batch_means_.size()) == n_batches_) return;
  batch_sum_ += value;
  if (++in_batch_ == batch_length_) {
    batch_means_.push_back(batch_sum_ / static_cast<double>(batch_length_));
    batch_sum_ = 0.0;
    in_batch_ = 0;
  }
}

double BatchMeans::variance(double time_step) const {
  if (batch_means_.size() < 2) return 0.0;
  return static_cast<double>(batch_length_) * time_step * sample_variance(batch_means_);
}

// --- transitions -----------------------------------------------------------

void TransitionCounter::observe(double theta) {
  int region = 0;
  if (std::abs(theta - 0.5 * kPi) <= 0.25 * kPi) {
    region = 1;
  } else if (std::abs(theta - 1.5 * kPi) <= 0.25 * kPi) {
    region = 2;
  }
  if (region == 0) return;
  if (last_region_ != 0 && region != last_region_) ++count_;
  last_region_ = region;
}

std::int64_t transition_count(std::span<const double> theta_series) {
  TransitionCounter counter;
  for (double theta : theta_series) counter.observe(theta);
  return counter.count();
}

// --- histograms ------------------------------------------------------------

std::vector<double> angle_histogram(std::span<const TorusAngles> samples, int bins) {
  if (bins < 1) throw std::invalid_argument("angle_histogram: bins must be >= 1");
  std::vector<double> hist(static_cast<std::size_t>(bins * bins), 0.0);
  const double width = kTwoPi / bins;
  for (const auto& s : samples) {
    const int i = std::clamp(static_cast<int>(s.phi / width), 0, bins - 1);
    const int j = std::clamp(static_cast<int>(s.theta / width), 0, bins - 1);
    hist[static_cast<std::size_t>(i * bins + j)] += 1.0;
  }
  const double total = static_cast<double>(samples.size());
  if (total > 0.0) {
    for (double& h : hist) h /= total;
  }
  return hist;
}

std::vector<double> target_histogram(const AngleFunction& potential, double beta, int bins,
                                     int sub) {
  if (bins < 1 || sub < 1) throw std::invalid_argument("target_histogram: bad resolution");
  const int fine = bins * sub;
  const double spacing = kTwoPi / fine;
  std::vector<double> energy(static_cast<std::size_t>(fine * fine));
  double min_energy = std::numeric_limits<double>::infinity();
  for (int i = 0; i < fine; ++i) {
    for (int j = 0; j < fine; ++j) {
      const double e = beta * potential((i + 0.5) * spacing, (j + 0.5) * spacing);
      energy[static_cast<std::size_t>(i * fine + j)] = e;
      min_energy = std::min(min_energy, e);
    }
  }
  std::vector<double> hist(static_cast<std::size_t>(bins * bins), 0.0);
  double total = 0.0;
  for (int i = 0; i < fine; ++i) {
    for (int j = 0; j < fine; ++j) {
      const double w = std::exp(min_energy - energy[static_cast<std::size_t>(i * fine + j)]);
      hist[static_cast<std::size_t>((i / sub) * bins + j / sub)] += w;
      total += w;
    }
  }
  for (double& h : hist) h /= total;
  return hist;
}

double tv_distance(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw std::invalid_argument("tv_distance: size mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) sum += std::abs(p[i] - q[i]);
  return std::min(0.5 * sum, 1.0);
}

double histogram_tv_distance(std::span<const TorusAngles> samples,
                             const AngleFunction& potential, double beta, int bins) {
  if (samples.size() < 10000) {
    throw std::invalid_argument("histogram_tv_distance: need at least 1e4 samples");
  }
  const auto empirical = angle_histogram(samples, bins);
  const auto target = target_histogram(potential, beta, bins);
  return tv_distance(empirical, target);
}

// --- aggregation -----------------------------------------------------------

const ExperimentRow* ExperimentTable::find(const std::string& a_label, double h) const {
  for (const auto& row : rows) {
    if (row.a_label == a_label && row.h == h) return &row;
  }
  return nullptr;
}

ExperimentRow aggregate_runs(std::span<const RunSummary> summaries) {
  if (summaries.size() < 2) {
    throw std::invalid_argument("aggregate_runs: need at least two runs");
  }
  ExperimentRow row;
  row.runs = static_cast<int>(summaries.size());
  row.n = summaries.front().n_steps;
  std::vector<double> means;
  means.reserve(summaries.size());
  for (const auto& s : summaries) {
    means.push_back(s.running_mean);
    row.mean_rk_steps += s.mean_rk_steps();
    row.mean_transitions += static_cast<double>(s.transition_count);
    row.mean_intermediate_xi += s.mean_intermediate_xi;
    row.mean_asym_var += s.asym_var_estimate;
    row.runtime += s.wall_time;
  }
  // Sorting makes the floating-point sums independent of run order.
  std::sort(means.begin(), means.end());
  const double count = static_cast<double>(summaries.size());
  row.mean_of_means = std::accumulate(means.begin(), means.end(), 0.0) / count;
  row.std_across_runs = std::sqrt(sample_variance(means));
  row.mean_rk_steps /= count;
  row.mean_transitions /= count;
  row.mean_intermediate_xi /= count;
  row.mean_asym_var /= count;
  return row;
}

double rms_error(std::span<const RunSummary> summaries, double reference) {
  if (summaries.empty()) throw std::invalid_argument("rms_error: no runs");
  double sum_sq = 0.0;
  for (const auto& s : summaries) {
    sum_sq += (s.running_mean - reference) * (s.running_mean - reference);
  }
  return std::sqrt(sum_sq / static_cast<double>(summaries.size()));
}

double log_log_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("log_log_slope: need two or more matching points");
  }
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

}  // namespace nrs
