#pragma once

#include "nrsampler/geometry.hpp"
#include "nrsampler/kernels.hpp"
#include "nrsampler/linalg.hpp"

namespace nrs {

struct ProjectionConfig {
  double kappa = 0.5;        // exponent parameter of the flow, 0 <= kappa < 1
  double initial_dt = 0.003; // Bogacki-Shampine step at the start of every call
  double eps_tol = 1e-7;     // stop once |xi| < eps_tol
  int max_rk_steps = 10000;  // cap on RK step attempts (accepted + rejected)
  bool halving = true;       // halve dt and retry whenever |xi| would increase

  /// Throws std::invalid_argument on out-of-range fields.
  void validate() const;
};

struct ProjectionResult {
  Vector point;
  int rk_steps = 0;          // accepted Bogacki-Shampine steps
  double initial_xi_norm = 0.0;
  double final_xi_norm = 0.0;
  bool converged = false;
};

/// Right-hand side of the projection flow
///   -((2 - kappa)/2) |xi|^{1-kappa} sum_alpha (xi_alpha/|xi|) (a - A) grad xi_alpha,
/// which is the zero vector on the level set.
Vector flow_rhs(const ReactionCoordinate& rc, const DynamicsSpec& spec, double kappa,
                const Vector& x);

/// Long-time limit of the projection flow started at `x`, integrated with the
/// Bogacki-Shampine 3(2) pair at fixed step size. The step is halved whenever
/// a step would increase |xi|; that step is then retried. Points already on
/// the level set are returned unchanged with zero steps.
///
/// Non-convergence is reported through `converged`; loss of rank of grad xi
/// along the path throws RankDeficientError.
ProjectionResult project(const ReactionCoordinate& rc, const DynamicsSpec& spec,
                         const ProjectionConfig& cfg, const Vector& x);

}  // namespace nrs
