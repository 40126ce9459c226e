#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "nrsampler/geometry.hpp"
#include "nrsampler/kernels.hpp"
#include "nrsampler/linalg.hpp"
#include "nrsampler/projection.hpp"

namespace nrs {

/// Outcome of one numerical identity check. `passed` is exactly
/// max_abs_error <= tolerance (a NaN error fails).
struct CheckReport {
  std::string name;
  double max_abs_error = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  Vector witness;  // point where the largest error occurred
};

CheckReport make_report(std::string name, double error, double tolerance, Vector witness);

/// Keeps the report with the larger error; the name and tolerance of `into`
/// are preserved.
void merge_into(CheckReport& into, const CheckReport& other);

/// exp(m) by scaling and squaring of a truncated Taylor series.
Matrix matrix_exp(const Matrix& m);

/// Central-difference Jacobian (d x d, entry (i, j) = d Theta_i / d x_j) of the
/// projection map at x. The projection runs with eps_tol tightened to 1e-10
/// and the Runge-Kutta step capped at 3e-4, which keeps the integration error
/// along the level set below the second-difference resolution.
Matrix fd_theta_jacobian(const ReactionCoordinate& rc, const DynamicsSpec& spec,
                         const ProjectionConfig& cfg, const Vector& x, double fd_step = 1e-4);

/// Compares the finite-difference Jacobian of Theta^A at a point on the level
/// set with P. Tolerance 1e-4.
CheckReport check_grad_theta(const ReactionCoordinate& rc, const DynamicsSpec& spec,
                             const ProjectionConfig& cfg, const Vector& x,
                             double fd_step = 1e-4);

/// As check_grad_theta, but P is taken from `kernel_spec` while the
/// projection runs with `flow_spec`. Used for negative controls.
CheckReport check_grad_theta_against(const ReactionCoordinate& rc, const DynamicsSpec& flow_spec,
                                     const DynamicsSpec& kernel_spec,
                                     const ProjectionConfig& cfg, const Vector& x,
                                     double fd_step = 1e-4);

/// sum_{j,r} a_jr d^2 Theta_i / dx_j dx_r by second differences of Theta.
Vector fd_theta_laplacian(const ReactionCoordinate& rc, const DynamicsSpec& spec,
                          const ProjectionConfig& cfg, const Vector& x, double fd_step = 1e-3);

/// sum_j dB_ij/dx_j - sum_{j,l} P_il d a_lj / dx_j with central differences.
Vector hessian_contraction_rhs(const ReactionCoordinate& rc, const DynamicsSpec& spec,
                               const Vector& x, double fd_step = 1e-5);

/// Second-order identity for Theta^A. The reported error is relative to the
/// larger infinity norm of the two sides; tolerance 1e-2.
CheckReport check_hess_theta(const ReactionCoordinate& rc, const DynamicsSpec& spec,
                             const ProjectionConfig& cfg, const Vector& x,
                             double fd_step = 1e-3);

/// grad_xi^T int_0^inf exp(-s Gamma) a exp(-s Gamma)^T ds = Phi^{-1} grad_xi^T (a - A) / 2
/// by truncated trapezoid quadrature (Richardson-extrapolated), together with
/// the two finite-time exponential integration identities. `grad_xi` is d x k.
/// Throws std::domain_error if some eigenvalue of Phi has non-positive real part.
CheckReport check_appendix_identity(const Matrix& grad_xi, const Matrix& diffusion,
                                    const Matrix& antisym, int quad_nodes = 4000,
                                    double tolerance = 1e-6, const Vector& witness = {});

/// P^2 = P, PV = V, grad_xi^T P = 0, P a P^T = B_sym, the V/Pi sum identity
/// and Re(eig Phi) > 0; for A = 0 also B = B^T. Tolerance 1e-9.
CheckReport check_kernel_identities(const ReactionCoordinate& rc, const DynamicsSpec& spec,
                                    const Vector& x, double tolerance = 1e-9);

/// Reaction coordinate, dynamics and points on the level set of one synthetic
/// (d, k) verification case.
struct SyntheticCase {
  std::string label;
  std::shared_ptr<const ReactionCoordinate> coordinate;
  DynamicsSpec spec;
  std::vector<Vector> points;
};

/// Cases "d2k1" (unit circle, a = I, rotation A), "d3k1" (ellipsoid with
/// state-dependent diagonal a, random A) and "d4k2" (two coupled circles,
/// random constant a, random A).
std::vector<SyntheticCase> make_synthetic_cases(std::uint64_t seed, int points_per_case);

struct VerifyOptions {
  std::uint64_t seed = 2024;
  int torus_points = 1000;     // 0 runs the synthetic cases only
  int synthetic_points = 100;  // per synthetic case
  bool inject_fault = false;  // compare against P built with -A
  ProjectionConfig projection{};
};

/// Runs every check over random torus points and the synthetic (d, k) cases
/// (2,1), (3,1) and (4,2), plus the symmetric k = d appendix case. One report
/// per check and case; a check that throws at a point reports an infinite
/// error there.
std::vector<CheckReport> run_verify_suite(const VerifyOptions& options);

}  // namespace nrs
