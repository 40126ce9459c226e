#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "nrsampler/geometry.hpp"
#include "nrsampler/kernels.hpp"
#include "nrsampler/projection.hpp"
#include "nrsampler/sampler.hpp"

namespace nrs {

/// A sampling problem on the torus: potential and observable both as
/// functions of the ambient point and of the angles (phi, theta).
struct TorusProblem {
  std::string name;
  TorusSurface surface;
  double beta;
  ScalarField potential;
  VectorField grad_potential;
  Observable observable;
  AngleFunction potential_angles;
  AngleFunction observable_angles;

  /// Dynamics with a = sigma = I and the given skew-symmetric A.
  DynamicsSpec dynamics(const Matrix& antisym) const;
  /// E_mu[f] by quadrature.
  double reference_value(int grid_size = 512) const;
};

/// beta = 20, U = 10 x3^2, f = 30 (x3 / r)^2.
TorusProblem make_test1(double major_radius = 1.0, double minor_radius = 0.5);
/// beta = 10, U = cos^2 theta, f = theta (theta - 3pi/2)(theta - 2pi) / 6.
TorusProblem make_test2(double major_radius = 1.0, double minor_radius = 0.5);
/// beta = 1, U = 0, f = cos phi.
TorusProblem make_uniform(double major_radius = 1.0, double minor_radius = 0.5);

/// Looks up "test1", "test2" or "uniform".
std::optional<TorusProblem> make_problem(std::string_view name, double major_radius = 1.0,
                                         double minor_radius = 0.5);

/// Rotation in the (x1, x2) plane: [[0, 2, 0], [-2, 0, 0], [0, 0, 0]].
Matrix abar_matrix();

/// torus_embed(0, 0) projected once onto the level set.
Vector default_initial_state(const TorusSurface& surface, const DynamicsSpec& spec,
                             const ProjectionConfig& cfg);

}  // namespace nrs
