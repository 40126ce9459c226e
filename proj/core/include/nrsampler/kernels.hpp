#pragma once

#include <functional>

#include "nrsampler/geometry.hpp"
#include "nrsampler/linalg.hpp"

namespace nrs {

using ScalarField = std::function<double(const Vector&)>;
using VectorField = std::function<Vector(const Vector&)>;
using MatrixField = std::function<Matrix(const Vector&)>;

/// Coefficients of the sampled dynamics: potential U, diffusion a = sigma
/// sigma^T, constant skew-symmetric A and inverse temperature beta.
///
/// The diffusion defaults to the identity (a = sigma = I, d1 = d), which keeps
/// the hot path free of std::function calls.
class DynamicsSpec {
 public:
  DynamicsSpec(int dim, ScalarField potential, VectorField grad_potential, double beta);

  /// Replaces A. Throws std::invalid_argument unless A + A^T == 0 exactly.
  DynamicsSpec& set_antisymmetric(const Matrix& antisym);

  /// State-dependent diffusion: a(x) (d x d), sigma(x) (d x noise_dim) and
  /// optionally the divergence vector (sum_j d a_ij / d x_j). A missing
  /// divergence is computed by central differences of a.
  DynamicsSpec& set_diffusion(MatrixField diffusion, MatrixField factor, int noise_dim,
                              VectorField divergence = {});

  /// Constant diffusion a with factor sigma.
  DynamicsSpec& set_constant_diffusion(const Matrix& diffusion, const Matrix& factor);

  int dim() const noexcept { return dim_; }
  int noise_dim() const noexcept { return noise_dim_; }
  double beta() const noexcept { return beta_; }
  const Matrix& antisymmetric() const noexcept { return antisym_; }
  bool identity_diffusion() const noexcept { return !diffusion_ && !constant_diffusion_; }
  bool constant_diffusion() const noexcept { return !diffusion_; }

  double potential(const Vector& x) const { return potential_(x); }
  Vector grad_potential(const Vector& x) const { return grad_potential_(x); }
  Matrix diffusion(const Vector& x) const;
  Matrix diffusion_factor(const Vector& x) const;
  /// Vector with entries sum_j d a_ij / d x_j.
  Vector diffusion_divergence(const Vector& x) const;

  /// a(x) - A, the matrix driving both the projection flow and the drift.
  Matrix drift_matrix(const Vector& x) const;

  /// Copy of this spec with A replaced by zero.
  DynamicsSpec reversible() const;

 private:
  int dim_;
  int noise_dim_;
  double beta_;
  ScalarField potential_;
  VectorField grad_potential_;
  Matrix antisym_;
  MatrixField diffusion_;
  MatrixField factor_;
  VectorField divergence_;
  bool constant_diffusion_ = false;
  Matrix constant_a_;
  Matrix constant_sigma_;
};

/// Diagnostics for the diffusion assumptions at a point.
struct DiffusionCheck {
  double min_eigenvalue;      // smallest eigenvalue of a(x)
  double factor_residual;     // max |sigma sigma^T - a|
};
DiffusionCheck check_diffusion(const DynamicsSpec& spec, const Vector& x);

/// Point-local constraint matrices.
struct ConstraintKernel {
  Matrix Phi;     // k x k, grad_xi^T (a - A) grad_xi
  Matrix Gamma;   // d x d, (a - A) grad_xi grad_xi^T
  Matrix P;       // oblique projection I - (a - A) grad_xi Phi^{-1} grad_xi^T
  Matrix B;       // P (a - A)
  Matrix B_sym;
  Matrix B_asym;
};

struct ReversibleKernel {
  Matrix P0;
  Matrix B0;
};

/// Throws RankDeficientError if grad_xi(x) has smallest singular value below
/// 1e-10, LinearSolveError if Phi cannot be factorised.
ConstraintKernel compute_kernel(const ReactionCoordinate& rc, const DynamicsSpec& spec,
                                const Vector& x);

/// Same matrices from explicit ingredients (grad_xi is d x k).
ConstraintKernel compute_kernel(const Matrix& grad_xi, const Matrix& diffusion,
                                const Matrix& antisym);

/// The A = 0 counterparts P0 = I - a grad_xi (grad_xi^T a grad_xi)^{-1} grad_xi^T
/// and B0 = P0 a. The spec's A is ignored.
ReversibleKernel compute_reversible_kernel(const ReactionCoordinate& rc,
                                           const DynamicsSpec& spec, const Vector& x);

/// J_i = (1/beta) sum_j d B^asym_ij / d x_j - [B^asym grad U]_i, divergence by
/// central differences with the given step. Exactly zero when A = 0.
Vector compute_J(const ReactionCoordinate& rc, const DynamicsSpec& spec, const Vector& x,
                 double fd_step = 1e-5);

/// Orthonormal basis (d x (d-k)) of the orthogonal complement of the columns
/// of grad_xi(x).
Matrix nullspace_basis(const ReactionCoordinate& rc, const Vector& x);
Matrix nullspace_basis(const Matrix& grad_xi);

}  // namespace nrs
