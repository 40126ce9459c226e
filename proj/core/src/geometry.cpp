#include "nrsampler/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "nrsampler/errors.hpp"

namespace nrs {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double angle) {
  double wrapped = std::fmod(angle, kTwoPi);
  if (wrapped < 0.0) wrapped += kTwoPi;
  // fmod of values just below 2pi can round up to exactly 2pi
  return wrapped >= kTwoPi ? 0.0 : wrapped;
}

}  // namespace

Matrix ReactionCoordinate::hessian(const Vector& x, int alpha) const {
  return fd_hessian(*this, x, alpha);
}

double fd_step_for(const Vector& x) { return 1e-5 * std::max(1.0, x.norm()); }

Matrix fd_jacobian(const std::function<Vector(const Vector&)>& map, const Vector& x,
                   int out_dim) {
  const double step = fd_step_for(x);
  const auto d = x.size();
  Matrix jac(d, out_dim);
  Vector probe = x;
  for (Eigen::Index j = 0; j < d; ++j) {
    probe(j) = x(j) + step;
    const Vector plus = map(probe);
    probe(j) = x(j) - step;
    const Vector minus = map(probe);
    probe(j) = x(j);
    jac.row(j) = ((plus - minus) / (2.0 * step)).transpose();
  }
  return jac;
}

Matrix fd_hessian(const ReactionCoordinate& rc, const Vector& x, int alpha) {
  const double step = fd_step_for(x);
  const auto d = x.size();
  Matrix hess(d, d);
  Vector probe = x;
  for (Eigen::Index j = 0; j < d; ++j) {
    probe(j) = x(j) + step;
    const Matrix plus = rc.jacobian(probe);
    probe(j) = x(j) - step;
    const Matrix minus = rc.jacobian(probe);
    probe(j) = x(j);
    hess.col(j) = (plus.col(alpha) - minus.col(alpha)) / (2.0 * step);
  }
  return 0.5 * (hess + hess.transpose());
}

double smallest_singular_value(const ReactionCoordinate& rc, const Vector& x) {
  const Matrix grad = rc.jacobian(x);
  Eigen::JacobiSVD<Matrix> svd(grad);
  return svd.singularValues()(svd.singularValues().size() - 1);
}

void require_full_rank(const Matrix& grad_xi, const Vector& x, double threshold) {
  Eigen::JacobiSVD<Matrix> svd(grad_xi);
  const double smallest = svd.singularValues()(svd.singularValues().size() - 1);
  if (!(smallest >= threshold)) {
    throw RankDeficientError(
        "reaction coordinate Jacobian is rank deficient (smallest singular value " +
            std::to_string(smallest) + ")",
        x, smallest);
  }
}

// --- FunctionCoordinate ---------------------------------------------------

FunctionCoordinate::FunctionCoordinate(int ambient_dim, int constraint_dim, ValueFn value,
                                       JacobianFn jacobian, HessianFn hessian)
    : d_(ambient_dim),
      k_(constraint_dim),
      value_(std::move(value)),
      jacobian_(std::move(jacobian)),
      hessian_(std::move(hessian)) {
  if (d_ < 1 || d_ > kMaxDim || k_ < 1 || k_ > d_) {
    throw std::invalid_argument("FunctionCoordinate: need 1 <= k <= d <= " +
                                std::to_string(kMaxDim));
  }
  if (!value_) throw std::invalid_argument("FunctionCoordinate: value function required");
}

Matrix FunctionCoordinate::jacobian(const Vector& x) const {
  if (jacobian_) return jacobian_(x);
  return fd_jacobian(value_, x, k_);
}

Matrix FunctionCoordinate::hessian(const Vector& x, int alpha) const {
  if (hessian_) return hessian_(x, alpha);
  return fd_hessian(*this, x, alpha);
}

// --- SphereCoordinate -----------------------------------------------------

SphereCoordinate::SphereCoordinate(int dim, double radius) : d_(dim), radius_(radius) {
  if (d_ < 2 || d_ > kMaxDim) throw std::invalid_argument("SphereCoordinate: bad dimension");
  if (!(radius_ > 0.0)) throw std::invalid_argument("SphereCoordinate: radius must be > 0");
}

Vector SphereCoordinate::value(const Vector& x) const {
  Vector out(1);
  out(0) = 0.5 * (x.squaredNorm() - radius_ * radius_);
  return out;
}

Matrix SphereCoordinate::jacobian(const Vector& x) const { return Matrix(x); }

Matrix SphereCoordinate::hessian(const Vector& x, int /*alpha*/) const {
  return Matrix::Identity(x.size(), x.size());
}

// --- TorusSurface ---------------------------------------------------------

TorusSurface::TorusSurface(double major_radius, double minor_radius)
    : R_(major_radius), r_(minor_radius) {
  if (!(r_ > 0.0 && r_ < R_)) {
    throw std::invalid_argument("TorusSurface: need 0 < minor_radius < major_radius");
  }
}

Vector TorusSurface::value(const Vector& x) const {
  Vector out(1);
  out(0) = torus_xi(x, R_, r_);
  return out;
}

Matrix TorusSurface::jacobian(const Vector& x) const {
  const double s = R_ * R_ - r_ * r_ + x.squaredNorm();
  const double planar = 4.0 * s - 8.0 * R_ * R_;
  Matrix grad(3, 1);
  grad(0, 0) = planar * x(0);
  grad(1, 0) = planar * x(1);
  grad(2, 0) = 4.0 * s * x(2);
  return grad;
}

Matrix TorusSurface::hessian(const Vector& x, int /*alpha*/) const {
  const double s = R_ * R_ - r_ * r_ + x.squaredNorm();
  Matrix hess = 8.0 * x * x.transpose();
  hess.diagonal().array() += 4.0 * s;
  hess(0, 0) -= 8.0 * R_ * R_;
  hess(1, 1) -= 8.0 * R_ * R_;
  return hess;
}

Vector TorusSurface::embed(double phi, double theta) const {
  return torus_embed(phi, theta, R_, r_);
}

TorusAngles TorusSurface::angles(const Vector& x) const { return torus_angles(x, R_); }

double TorusSurface::gradient_norm_on_surface(double phi) const {
  return 8.0 * R_ * R_ * r_ * (1.0 + (r_ / R_) * std::cos(phi));
}

double torus_xi(const Vector& x, double major_radius, double minor_radius) {
  const double R2 = major_radius * major_radius;
  const double s = R2 - minor_radius * minor_radius + x.squaredNorm();
  return s * s - 4.0 * R2 * (x(0) * x(0) + x(1) * x(1));
}

Vector torus_embed(double phi, double theta, double major_radius, double minor_radius) {
  const double ring = major_radius + minor_radius * std::cos(phi);
  return make_vector({ring * std::cos(theta), ring * std::sin(theta),
                      minor_radius * std::sin(phi)});
}

TorusAngles torus_angles(const Vector& x, double major_radius) {
  const double rho = std::hypot(x(0), x(1));
  return {wrap_angle(std::atan2(x(2), rho - major_radius)),
          wrap_angle(std::atan2(x(1), x(0)))};
}

double surface_density(double phi, double major_radius, double minor_radius) {
  return (1.0 + (minor_radius / major_radius) * std::cos(phi)) / (kTwoPi * kTwoPi);
}

double quadrature_expectation(const AngleFunction& f, const AngleFunction& potential,
                              double beta, int grid_size) {
  if (grid_size < 16) {
    throw std::invalid_argument("quadrature_expectation: grid_size must be >= 16");
  }
  const double spacing = kTwoPi / grid_size;
  const auto n = static_cast<std::size_t>(grid_size);

  // Shift by the minimum of beta*U so exp() cannot overflow for large beta.
  std::vector<double> energy(n * n);
  double min_energy = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double e = beta * potential(spacing * i, spacing * j);
      if (!std::isfinite(e)) {
        throw std::domain_error("quadrature_expectation: non-finite potential");
      }
      energy[i * n + j] = e;
      min_energy = std::min(min_energy, e);
    }
  }

  double weighted = 0.0;
  double normaliser = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double value = f(spacing * i, spacing * j);
      if (!std::isfinite(value)) {
        throw std::domain_error("quadrature_expectation: non-finite observable");
      }
      const double w = std::exp(min_energy - energy[i * n + j]);
      weighted += w * value;
      normaliser += w;
    }
  }
  return weighted / normaliser;
}

}  // namespace nrs
