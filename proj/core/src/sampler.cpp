#include "nrsampler/sampler.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>
#include <string>

#include "nrsampler/errors.hpp"

namespace nrs {

std::string_view to_string(NoiseKind kind) {
  switch (kind) {
    case NoiseKind::gaussian:
      return "gaussian";
    case NoiseKind::rademacher:
      return "rademacher";
    case NoiseKind::uniform_bounded:
      return "uniform_bounded";
  }
  return "unknown";
}

std::optional<NoiseKind> parse_noise_kind(std::string_view name) {
  if (name == "gaussian") return NoiseKind::gaussian;
  if (name == "rademacher") return NoiseKind::rademacher;
  if (name == "uniform_bounded" || name == "uniform") return NoiseKind::uniform_bounded;
  return std::nullopt;
}

std::uint64_t mix_seed(std::uint64_t value) {
  value += 0x9e3779b97f4a7c15ULL;
  value = (value ^ (value >> 30)) * 0xbf58476d1ce4e5b9ULL;
  value = (value ^ (value >> 27)) * 0x94d049bb133111ebULL;
  return value ^ (value >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> indices) {
  std::uint64_t seed = mix_seed(base);
  for (std::uint64_t index : indices) seed = mix_seed(seed ^ mix_seed(index));
  return seed;
}

RandomStream::RandomStream(std::uint64_t seed) : engine_(mix_seed(seed)) {}

Vector sample_noise(NoiseKind kind, RandomStream& rng, int dim) {
  static const double kSqrt3 = std::sqrt(3.0);
  Vector eta(dim);
  for (int i = 0; i < dim; ++i) {
    switch (kind) {
      case NoiseKind::gaussian:
        eta(i) = rng.normal();
        break;
      case NoiseKind::rademacher:
        eta(i) = rng.sign();
        break;
      case NoiseKind::uniform_bounded:
        eta(i) = kSqrt3 * (2.0 * rng.uniform() - 1.0);
        break;
    }
  }
  return eta;
}

std::int64_t SchemeConfig::n_steps() const { return std::llround(total_time / step_size); }

void SchemeConfig::validate() const {
  if (!(step_size > 0.0)) throw std::invalid_argument("SchemeConfig: h must be > 0");
  if (!(total_time >= step_size)) throw std::invalid_argument("SchemeConfig: need T >= h");
}

Vector half_step(const DynamicsSpec& spec, const Vector& x, double h, const Vector& eta) {
  Vector drift = -(spec.drift_matrix(x) * spec.grad_potential(x));
  if (!spec.identity_diffusion()) drift += spec.diffusion_divergence(x) / spec.beta();
  const double noise_scale = std::sqrt(2.0 * h / spec.beta());
  if (spec.identity_diffusion()) return x + h * drift + noise_scale * eta;
  return x + h * drift + noise_scale * (spec.diffusion_factor(x) * eta);
}

StepResult step_with_noise(const ReactionCoordinate& rc, const DynamicsSpec& spec,
                           const ProjectionConfig& proj_cfg, const Vector& x, double h,
                           const Vector& eta) {
  const Vector intermediate = half_step(spec, x, h, eta);
  StepResult out;
  out.projection = project(rc, spec, proj_cfg, intermediate);
  out.intermediate_xi_norm = out.projection.initial_xi_norm;
  if (!out.projection.converged) {
    throw RunFailure("projection did not converge (|xi| = " +
                         std::to_string(out.projection.final_xi_norm) + ")",
                     intermediate, -1);
  }
  out.point = out.projection.point;
  return out;
}

StepResult step(const ReactionCoordinate& rc, const DynamicsSpec& spec,
                const ProjectionConfig& proj_cfg, const Vector& x, double h, NoiseKind noise,
                RandomStream& rng) {
  return step_with_noise(rc, spec, proj_cfg, x, h, sample_noise(noise, rng, spec.noise_dim()));
}

RunResult run(const ReactionCoordinate& rc, const DynamicsSpec& spec,
              const ProjectionConfig& proj_cfg, const SchemeConfig& scheme_cfg,
              const Vector& x0, const Observable& f, const RunOptions& options) {
  proj_cfg.validate();
  scheme_cfg.validate();
  if (rc.value(x0).norm() >= proj_cfg.eps_tol) {
    throw std::invalid_argument("run: initial state is not on the level set");
  }

  const auto start = std::chrono::steady_clock::now();
  const std::int64_t n = scheme_cfg.n_steps();
  const double h = scheme_cfg.step_size;

  RunResult result;
  RunSummary& summary = result.summary;
  summary.n_steps = n;
  if (scheme_cfg.record_trajectory && options.angles) {
    result.trajectory.reserve(static_cast<std::size_t>(n));
  }

  RandomStream rng(scheme_cfg.seed);
  BatchMeans batches(n);
  TransitionCounter transitions;
  std::vector<std::int64_t> rk_counts;
  // Shifted by the first value: exact for constant observables.
  double f_shift = 0.0;
  double f_sum = 0.0;
  double xi_sum = 0.0;

  Vector x = x0;
  for (std::int64_t l = 0; l < n; ++l) {
    StepResult next;
    try {
      next = step(rc, spec, proj_cfg, x, h, scheme_cfg.noise, rng);
    } catch (const RunFailure& failure) {
      throw RunFailure(std::string("run failed at step ") + std::to_string(l + 1) + ": " +
                           failure.what(),
                       failure.state(), l + 1);
    }
    x = next.point;

    const double value = f(x);
    if (l == 0) f_shift = value;
    f_sum += value - f_shift;
    batches.add(value);
    if (scheme_cfg.record_intermediate_xi) xi_sum += next.intermediate_xi_norm;

    const auto steps = static_cast<std::size_t>(next.projection.rk_steps);
    if (steps >= rk_counts.size()) rk_counts.resize(steps + 1, 0);
    ++rk_counts[steps];

    if (options.angles) {
      const TorusAngles angles = options.angles(x);
      transitions.observe(angles.theta);
      if (scheme_cfg.record_trajectory) result.trajectory.push_back(angles);
    }
    if (options.on_state) options.on_state(l + 1, x);
  }

  summary.running_mean = f_shift + f_sum / static_cast<double>(n);
  summary.asym_var_estimate = batches.variance(h);
  summary.transition_count = transitions.count();
  summary.mean_intermediate_xi =
      scheme_cfg.record_intermediate_xi ? xi_sum / static_cast<double>(n) : 0.0;
  for (std::size_t steps = 0; steps < rk_counts.size(); ++steps) {
    if (rk_counts[steps] > 0) summary.rk_histogram[static_cast<int>(steps)] = rk_counts[steps];
  }
  summary.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  result.final_state = x;
  return result;
}

Vector soft_step(const ReactionCoordinate& rc, const DynamicsSpec& spec, double epsilon,
                 const Vector& x, double h, const Vector& eta) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("soft_step: epsilon must be > 0");
  // grad F = grad_xi xi
  const Vector grad_total = spec.grad_potential(x) + (rc.jacobian(x) * rc.value(x)) / epsilon;
  Vector drift = -(spec.drift_matrix(x) * grad_total);
  if (!spec.identity_diffusion()) drift += spec.diffusion_divergence(x) / spec.beta();
  const double noise_scale = std::sqrt(2.0 * h / spec.beta());
  return x + h * drift + noise_scale * (spec.diffusion_factor(x) * eta);
}

Vector soft_step(const ReactionCoordinate& rc, const DynamicsSpec& spec, double epsilon,
                 const Vector& x, double h, NoiseKind noise, RandomStream& rng) {
  return soft_step(rc, spec, epsilon, x, h, sample_noise(noise, rng, spec.noise_dim()));
}

}  // namespace nrs
