#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string_view>
#include <vector>

#include "nrsampler/geometry.hpp"
#include "nrsampler/kernels.hpp"
#include "nrsampler/projection.hpp"
#include "nrsampler/stats.hpp"

namespace nrs {

/// Law of the i.i.d. noise components. All kinds have mean 0, variance 1 and
/// vanishing third moment; the last two are bounded.
enum class NoiseKind { gaussian, rademacher, uniform_bounded };

std::string_view to_string(NoiseKind kind);
std::optional<NoiseKind> parse_noise_kind(std::string_view name);

/// SplitMix64 finaliser; used to derive independent stream seeds.
std::uint64_t mix_seed(std::uint64_t value);

/// Seed of an independent stream identified by `indices` under `base`.
std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> indices);

/// Random source of one Markov chain.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed);

  double normal() { return normal_(engine_); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double sign() { return (engine_() >> 63) != 0 ? 1.0 : -1.0; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
};

Vector sample_noise(NoiseKind kind, RandomStream& rng, int dim);

struct SchemeConfig {
  double step_size = 1e-2;     // h
  double total_time = 1.0;     // T; the chain takes round(T / h) steps
  NoiseKind noise = NoiseKind::gaussian;
  std::uint64_t seed = 0;
  bool record_trajectory = false;
  bool record_intermediate_xi = true;

  std::int64_t n_steps() const;
  void validate() const;
};

/// Drift plus noise move x + b(x) h + sqrt(2h/beta) sigma(x) eta with
/// b_i = sum_j [(A_ij - a_ij) d_j U + (1/beta) d_j a_ij].
Vector half_step(const DynamicsSpec& spec, const Vector& x, double h, const Vector& eta);

struct StepResult {
  Vector point;
  ProjectionResult projection;
  double intermediate_xi_norm = 0.0;
};

/// One full transition: half_step with fresh noise, then projection back to
/// the level set. Throws RunFailure (step index -1) when the projection does
/// not converge.
StepResult step(const ReactionCoordinate& rc, const DynamicsSpec& spec,
                const ProjectionConfig& proj_cfg, const Vector& x, double h, NoiseKind noise,
                RandomStream& rng);

/// Same transition with caller-supplied noise.
StepResult step_with_noise(const ReactionCoordinate& rc, const DynamicsSpec& spec,
                           const ProjectionConfig& proj_cfg, const Vector& x, double h,
                           const Vector& eta);

using Observable = std::function<double(const Vector&)>;

struct RunOptions {
  /// Torus angles of a state; enables transition counting and trajectory
  /// recording.
  std::function<TorusAngles(const Vector&)> angles;
  /// Observer invoked with (step index, state) after every transition.
  std::function<void(std::int64_t, const Vector&)> on_state;
};

struct RunResult {
  RunSummary summary;
  std::vector<TorusAngles> trajectory;  // filled when record_trajectory and angles are set
  Vector final_state;
};

/// Runs the chain for round(T/h) transitions from x0 (which must lie on the
/// level set) and accumulates the ergodic average of `f` over the states
/// x^(1), ..., x^(n). Throws RunFailure with the failing step index when a
/// projection does not converge.
RunResult run(const ReactionCoordinate& rc, const DynamicsSpec& spec,
              const ProjectionConfig& proj_cfg, const SchemeConfig& scheme_cfg,
              const Vector& x0, const Observable& f, const RunOptions& options = {});

/// One Euler-Maruyama step of the soft-constrained dynamics with potential
/// U + F/epsilon, F = |xi|^2 / 2.
Vector soft_step(const ReactionCoordinate& rc, const DynamicsSpec& spec, double epsilon,
                 const Vector& x, double h, const Vector& eta);
Vector soft_step(const ReactionCoordinate& rc, const DynamicsSpec& spec, double epsilon,
                 const Vector& x, double h, NoiseKind noise, RandomStream& rng);

}  // namespace nrs
