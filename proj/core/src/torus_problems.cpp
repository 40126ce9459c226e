#include "nrsampler/torus_problems.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nrs {

namespace {

constexpr double kPi = std::numbers::pi;

double toroidal_angle(const Vector& x) {
  const double theta = std::atan2(x(1), x(0));
  return theta < 0.0 ? theta + 2.0 * kPi : theta;
}

double cubic_in_theta(double theta) {
  return theta * (theta - 1.5 * kPi) * (theta - 2.0 * kPi) / 6.0;
}

}  // namespace

DynamicsSpec TorusProblem::dynamics(const Matrix& antisym) const {
  DynamicsSpec spec(3, potential, grad_potential, beta);
  spec.set_antisymmetric(antisym);
  return spec;
}

double TorusProblem::reference_value(int grid_size) const {
  return quadrature_expectation(observable_angles, potential_angles, beta, grid_size);
}

TorusProblem make_test1(double major_radius, double minor_radius) {
  const double r = minor_radius;
  return TorusProblem{
      .name = "test1",
      .surface = TorusSurface(major_radius, minor_radius),
      .beta = 20.0,
      .potential = [](const Vector& x) { return 10.0 * x(2) * x(2); },
      .grad_potential = [](const Vector& x) { return make_vector({0.0, 0.0, 20.0 * x(2)}); },
      .observable = [r](const Vector& x) { return 30.0 * (x(2) / r) * (x(2) / r); },
      .potential_angles =
          [r](double phi, double) {
            const double x3 = r * std::sin(phi);
            return 10.0 * x3 * x3;
          },
      .observable_angles =
          [](double phi, double) { return 30.0 * std::sin(phi) * std::sin(phi); },
  };
}

TorusProblem make_test2(double major_radius, double minor_radius) {
  return TorusProblem{
      .name = "test2",
      .surface = TorusSurface(major_radius, minor_radius),
      .beta = 10.0,
      // cos^2 theta = x1^2 / (x1^2 + x2^2)
      .potential =
          [](const Vector& x) { return x(0) * x(0) / (x(0) * x(0) + x(1) * x(1)); },
      .grad_potential =
          [](const Vector& x) {
            const double rho2 = x(0) * x(0) + x(1) * x(1);
            const double scale = 2.0 * x(0) * x(1) / (rho2 * rho2);
            return make_vector({scale * x(1), -scale * x(0), 0.0});
          },
      .observable = [](const Vector& x) { return cubic_in_theta(toroidal_angle(x)); },
      .potential_angles =
          [](double, double theta) { return std::cos(theta) * std::cos(theta); },
      .observable_angles = [](double, double theta) { return cubic_in_theta(theta); },
  };
}

TorusProblem make_uniform(double major_radius, double minor_radius) {
  const double R = major_radius;
  return TorusProblem{
      .name = "uniform",
      .surface = TorusSurface(major_radius, minor_radius),
      .beta = 1.0,
      .potential = [](const Vector&) { return 0.0; },
      .grad_potential = [](const Vector&) { return Vector(Vector::Zero(3)); },
      .observable = [R](const Vector& x) { return std::cos(torus_angles(x, R).phi); },
      .potential_angles = [](double, double) { return 0.0; },
      .observable_angles = [](double phi, double) { return std::cos(phi); },
  };
}

std::optional<TorusProblem> make_problem(std::string_view name, double major_radius,
                                         double minor_radius) {
  if (name == "test1") return make_test1(major_radius, minor_radius);
  if (name == "test2") return make_test2(major_radius, minor_radius);
  if (name == "uniform") return make_uniform(major_radius, minor_radius);
  return std::nullopt;
}

Matrix abar_matrix() {
  return make_matrix({{0.0, 2.0, 0.0}, {-2.0, 0.0, 0.0}, {0.0, 0.0, 0.0}});
}

Vector default_initial_state(const TorusSurface& surface, const DynamicsSpec& spec,
                             const ProjectionConfig& cfg) {
  const ProjectionResult projected = project(surface, spec, cfg, surface.embed(0.0, 0.0));
  if (!projected.converged) {
    throw std::runtime_error("default_initial_state: projection did not converge");
  }
  return projected.point;
}

}  // namespace nrs
