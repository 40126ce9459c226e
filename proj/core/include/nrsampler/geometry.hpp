#pragma once

#include <functional>
#include <optional>

#include "nrsampler/linalg.hpp"

namespace nrs {

/// A reaction coordinate xi : R^d -> R^k whose zero level set is the
/// sampling submanifold.
///
/// Subclasses must provide the value and the Jacobian; Hessians default to
/// central differences of the Jacobian. The Jacobian is stored d x k, i.e.
/// column alpha is the gradient of xi_alpha.
class ReactionCoordinate {
 public:
  virtual ~ReactionCoordinate() = default;

  virtual int ambient_dim() const = 0;
  virtual int constraint_dim() const = 0;

  virtual Vector value(const Vector& x) const = 0;
  virtual Matrix jacobian(const Vector& x) const = 0;

  /// Hessian of component `alpha` (d x d, symmetric).
  virtual Matrix hessian(const Vector& x, int alpha) const;
};

/// Central-difference step used for derived derivatives at `x`.
double fd_step_for(const Vector& x);

/// Central-difference Jacobian (d x k) of an arbitrary map.
Matrix fd_jacobian(const std::function<Vector(const Vector&)>& map, const Vector& x,
                   int out_dim);

/// Central-difference Hessian of xi_alpha from the Jacobian, symmetrised.
Matrix fd_hessian(const ReactionCoordinate& rc, const Vector& x, int alpha);

/// Smallest singular value of the Jacobian at `x`.
double smallest_singular_value(const ReactionCoordinate& rc, const Vector& x);

/// Throws RankDeficientError when the Jacobian at `x` is numerically rank
/// deficient (smallest singular value below `threshold`).
void require_full_rank(const Matrix& grad_xi, const Vector& x, double threshold = 1e-10);

/// Reaction coordinate assembled from callables. Missing derivatives fall back
/// to central differences with step 1e-5 * max(1, |x|).
class FunctionCoordinate final : public ReactionCoordinate {
 public:
  using ValueFn = std::function<Vector(const Vector&)>;
  using JacobianFn = std::function<Matrix(const Vector&)>;
  using HessianFn = std::function<Matrix(const Vector&, int)>;

  FunctionCoordinate(int ambient_dim, int constraint_dim, ValueFn value,
                     JacobianFn jacobian = {}, HessianFn hessian = {});

  int ambient_dim() const override { return d_; }
  int constraint_dim() const override { return k_; }
  Vector value(const Vector& x) const override { return value_(x); }
  Matrix jacobian(const Vector& x) const override;
  Matrix hessian(const Vector& x, int alpha) const override;

 private:
  int d_;
  int k_;
  ValueFn value_;
  JacobianFn jacobian_;
  HessianFn hessian_;
};

/// xi(x) = (|x|^2 - radius^2) / 2 in R^d; the sphere (circle for d = 2).
class SphereCoordinate final : public ReactionCoordinate {
 public:
  explicit SphereCoordinate(int dim, double radius = 1.0);

  int ambient_dim() const override { return d_; }
  int constraint_dim() const override { return 1; }
  Vector value(const Vector& x) const override;
  Matrix jacobian(const Vector& x) const override;
  Matrix hessian(const Vector& x, int alpha) const override;

 private:
  int d_;
  double radius_;
};

struct TorusAngles {
  double phi;    // poloidal angle in [0, 2pi)
  double theta;  // toroidal angle in [0, 2pi)
};

/// Torus in R^3 as the zero set of the quartic
/// (R^2 - r^2 + |x|^2)^2 - 4 R^2 (x1^2 + x2^2), with analytic derivatives.
class TorusSurface final : public ReactionCoordinate {
 public:
  TorusSurface(double major_radius, double minor_radius);

  double major_radius() const noexcept { return R_; }
  double minor_radius() const noexcept { return r_; }

  int ambient_dim() const override { return 3; }
  int constraint_dim() const override { return 1; }
  Vector value(const Vector& x) const override;
  Matrix jacobian(const Vector& x) const override;
  Matrix hessian(const Vector& x, int alpha) const override;

  Vector embed(double phi, double theta) const;
  TorusAngles angles(const Vector& x) const;
  /// Closed form of |grad xi| on the surface: 8 R^2 r (1 + (r/R) cos phi).
  double gradient_norm_on_surface(double phi) const;

 private:
  double R_;
  double r_;
};

double torus_xi(const Vector& x, double major_radius, double minor_radius);
Vector torus_embed(double phi, double theta, double major_radius, double minor_radius);
/// Angles of `x` relative to the torus with major radius R; both in [0, 2pi).
TorusAngles torus_angles(const Vector& x, double major_radius);
/// Normalised surface measure density in (phi, theta): (1 + (r/R) cos phi) / (2pi)^2.
double surface_density(double phi, double major_radius, double minor_radius);

using AngleFunction = std::function<double(double phi, double theta)>;

/// E_mu[f] for mu(dphi dtheta) proportional to exp(-beta U) dphi dtheta on the
/// torus, by the periodic trapezoid rule on a grid_size x grid_size grid.
/// Throws std::invalid_argument for grid_size < 16 and std::domain_error on a
/// non-finite integrand.
double quadrature_expectation(const AngleFunction& f, const AngleFunction& potential,
                              double beta, int grid_size = 512);

}  // namespace nrs
