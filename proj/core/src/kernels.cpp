#include "nrsampler/kernels.hpp"

#include <stdexcept>
#include <string>

#include "nrsampler/errors.hpp"

namespace nrs {

// --- DynamicsSpec ---------------------------------------------------------

DynamicsSpec::DynamicsSpec(int dim, ScalarField potential, VectorField grad_potential,
                           double beta)
    : dim_(dim),
      noise_dim_(dim),
      beta_(beta),
      potential_(std::move(potential)),
      grad_potential_(std::move(grad_potential)),
      antisym_(Matrix::Zero(dim, dim)) {
  if (dim_ < 1 || dim_ > kMaxDim) {
    throw std::invalid_argument("DynamicsSpec: dimension out of range");
  }
  if (!(beta_ > 0.0)) throw std::invalid_argument("DynamicsSpec: beta must be > 0");
  if (!potential_ || !grad_potential_) {
    throw std::invalid_argument("DynamicsSpec: potential and gradient required");
  }
}

DynamicsSpec& DynamicsSpec::set_antisymmetric(const Matrix& antisym) {
  if (antisym.rows() != dim_ || antisym.cols() != dim_) {
    throw std::invalid_argument("DynamicsSpec: A has wrong shape");
  }
  if ((antisym + antisym.transpose()).cwiseAbs().maxCoeff() != 0.0) {
    throw std::invalid_argument("DynamicsSpec: A must satisfy A + A^T = 0");
  }
  antisym_ = antisym;
  return *this;
}

DynamicsSpec& DynamicsSpec::set_diffusion(MatrixField diffusion, MatrixField factor,
                                          int noise_dim, VectorField divergence) {
  if (!diffusion || !factor) {
    throw std::invalid_argument("DynamicsSpec: diffusion and factor required");
  }
  if (noise_dim < dim_ || noise_dim > kMaxDim) {
    throw std::invalid_argument("DynamicsSpec: need d <= noise_dim <= " +
                                std::to_string(kMaxDim));
  }
  diffusion_ = std::move(diffusion);
  factor_ = std::move(factor);
  divergence_ = std::move(divergence);
  noise_dim_ = noise_dim;
  constant_diffusion_ = false;
  return *this;
}

DynamicsSpec& DynamicsSpec::set_constant_diffusion(const Matrix& diffusion,
                                                   const Matrix& factor) {
  if (diffusion.rows() != dim_ || diffusion.cols() != dim_ || factor.rows() != dim_ ||
      factor.cols() < dim_ || factor.cols() > kMaxDim) {
    throw std::invalid_argument("DynamicsSpec: constant diffusion has wrong shape");
  }
  diffusion_ = {};
  factor_ = {};
  divergence_ = {};
  constant_diffusion_ = true;
  constant_a_ = diffusion;
  constant_sigma_ = factor;
  noise_dim_ = static_cast<int>(factor.cols());
  return *this;
}

Matrix DynamicsSpec::diffusion(const Vector& x) const {
  if (diffusion_) return diffusion_(x);
  if (constant_diffusion_) return constant_a_;
  return Matrix::Identity(dim_, dim_);
}

Matrix DynamicsSpec::diffusion_factor(const Vector& x) const {
  if (factor_) return factor_(x);
  if (constant_diffusion_) return constant_sigma_;
  return Matrix::Identity(dim_, dim_);
}

Vector DynamicsSpec::diffusion_divergence(const Vector& x) const {
  if (!diffusion_) return Vector::Zero(dim_);
  if (divergence_) return divergence_(x);
  const double step = fd_step_for(x);
  Vector div = Vector::Zero(dim_);
  Vector probe = x;
  for (int j = 0; j < dim_; ++j) {
    probe(j) = x(j) + step;
    const Matrix plus = diffusion_(probe);
    probe(j) = x(j) - step;
    const Matrix minus = diffusion_(probe);
    probe(j) = x(j);
    div += (plus.col(j) - minus.col(j)) / (2.0 * step);
  }
  return div;
}

Matrix DynamicsSpec::drift_matrix(const Vector& x) const { return diffusion(x) - antisym_; }

DynamicsSpec DynamicsSpec::reversible() const {
  DynamicsSpec copy = *this;
  copy.antisym_.setZero();
  return copy;
}

DiffusionCheck check_diffusion(const DynamicsSpec& spec, const Vector& x) {
  const Matrix a = spec.diffusion(x);
  const Matrix sigma = spec.diffusion_factor(x);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(a, Eigen::EigenvaluesOnly);
  return {eig.eigenvalues()(0), max_abs(sigma * sigma.transpose() - a)};
}

// --- kernels --------------------------------------------------------------

ConstraintKernel compute_kernel(const Matrix& grad_xi, const Matrix& diffusion,
                                const Matrix& antisym) {
  const auto d = grad_xi.rows();
  const Matrix drift = diffusion - antisym;
  const Matrix drift_grad = drift * grad_xi;

  ConstraintKernel kernel;
  kernel.Phi = grad_xi.transpose() * drift_grad;
  kernel.Gamma = drift_grad * grad_xi.transpose();

  Eigen::FullPivLU<Matrix> lu(kernel.Phi);
  if (!lu.isInvertible()) {
    throw LinearSolveError("compute_kernel: Phi is singular");
  }
  // Phi^{-1} grad_xi^T, k x d
  const Matrix solved = lu.solve(Matrix(grad_xi.transpose()));
  kernel.P = Matrix::Identity(d, d) - drift_grad * solved;
  kernel.B = kernel.P * drift;
  kernel.B_sym = 0.5 * (kernel.B + kernel.B.transpose());
  kernel.B_asym = 0.5 * (kernel.B - kernel.B.transpose());
  return kernel;
}

ConstraintKernel compute_kernel(const ReactionCoordinate& rc, const DynamicsSpec& spec,
                                const Vector& x) {
  const Matrix grad = rc.jacobian(x);
  require_full_rank(grad, x);
  return compute_kernel(grad, spec.diffusion(x), spec.antisymmetric());
}

ReversibleKernel compute_reversible_kernel(const ReactionCoordinate& rc,
                                           const DynamicsSpec& spec, const Vector& x) {
  const Matrix grad = rc.jacobian(x);
  require_full_rank(grad, x);
  const Matrix a = spec.diffusion(x);
  const Matrix a_grad = a * grad;
  const Matrix gram = grad.transpose() * a_grad;

  Eigen::FullPivLU<Matrix> lu(gram);
  if (!lu.isInvertible()) {
    throw LinearSolveError("compute_reversible_kernel: grad_xi^T a grad_xi is singular");
  }
  ReversibleKernel out;
  out.P0 = Matrix::Identity(x.size(), x.size()) - a_grad * lu.solve(Matrix(grad.transpose()));
  out.B0 = out.P0 * a;
  return out;
}

Vector compute_J(const ReactionCoordinate& rc, const DynamicsSpec& spec, const Vector& x,
                 double fd_step) {
  if (!(fd_step > 0.0)) throw std::invalid_argument("compute_J: fd_step must be > 0");
  const auto d = x.size();
  const ConstraintKernel centre = compute_kernel(rc, spec, x);
  if (max_abs(spec.antisymmetric()) == 0.0) return Vector::Zero(d);

  Vector divergence = Vector::Zero(d);
  Vector probe = x;
  for (Eigen::Index j = 0; j < d; ++j) {
    probe(j) = x(j) + fd_step;
    const Matrix plus = compute_kernel(rc, spec, probe).B_asym;
    probe(j) = x(j) - fd_step;
    const Matrix minus = compute_kernel(rc, spec, probe).B_asym;
    probe(j) = x(j);
    divergence += (plus.col(j) - minus.col(j)) / (2.0 * fd_step);
  }
  return divergence / spec.beta() - centre.B_asym * spec.grad_potential(x);
}

Matrix nullspace_basis(const Matrix& grad_xi) {
  const auto d = grad_xi.rows();
  const auto k = grad_xi.cols();
  Eigen::HouseholderQR<Matrix> qr(grad_xi);
  const Matrix q = qr.householderQ() * Matrix::Identity(d, d);
  return q.rightCols(d - k);
}

Matrix nullspace_basis(const ReactionCoordinate& rc, const Vector& x) {
  const Matrix grad = rc.jacobian(x);
  require_full_rank(grad, x);
  return nullspace_basis(grad);
}

}  // namespace nrs
