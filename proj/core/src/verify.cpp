#include "nrsampler/verify.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "nrsampler/errors.hpp"
#include "nrsampler/sampler.hpp"
#include "nrsampler/torus_problems.hpp"

namespace nrs {

CheckReport make_report(std::string name, double error, double tolerance, Vector witness) {
  CheckReport report;
  report.name = std::move(name);
  report.max_abs_error = error;
  report.tolerance = tolerance;
  report.passed = error <= tolerance;
  report.witness = std::move(witness);
  return report;
}

void merge_into(CheckReport& into, const CheckReport& other) {
  const bool other_worse = std::isnan(other.max_abs_error) ||
                           (!std::isnan(into.max_abs_error) &&
                            other.max_abs_error > into.max_abs_error);
  if (other_worse) {
    into.max_abs_error = other.max_abs_error;
    into.witness = other.witness;
  }
  into.passed = into.max_abs_error <= into.tolerance;
}

Matrix matrix_exp(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("matrix_exp: matrix must be square");
  const Eigen::Index n = m.rows();
  const double norm = m.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const Matrix scaled = m / std::ldexp(1.0, squarings);

  Matrix result = Matrix::Identity(n, n);
  Matrix term = Matrix::Identity(n, n);
  for (int j = 1; j < 40; ++j) {
    term = (term * scaled) / static_cast<double>(j);
    result += term;
    if (max_abs(term) <= std::numeric_limits<double>::epsilon() * 0.25 * max_abs(result)) break;
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

namespace {

ProjectionConfig tightened(const ProjectionConfig& cfg) {
  ProjectionConfig tight = cfg;
  tight.eps_tol = std::min(cfg.eps_tol, 1e-10);
  tight.initial_dt = std::min(cfg.initial_dt, 3e-4);
  tight.max_rk_steps = std::max(cfg.max_rk_steps, 100000);
  return tight;
}

Vector theta(const ReactionCoordinate& rc, const DynamicsSpec& spec,
             const ProjectionConfig& cfg, const Vector& x) {
  ProjectionResult result = project(rc, spec, cfg, x);
  if (!result.converged) {
    throw RunFailure("verify: projection did not converge", x, -1);
  }
  return result.point;
}

double inf_norm(const Vector& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

}  // namespace

Matrix fd_theta_jacobian(const ReactionCoordinate& rc, const DynamicsSpec& spec,
                         const ProjectionConfig& cfg, const Vector& x, double fd_step) {
  if (!(fd_step > 0.0)) throw std::invalid_argument("fd_theta_jacobian: fd_step must be > 0");
  const ProjectionConfig tight = tightened(cfg);
  const Eigen::Index d = x.size();
  Matrix jac(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    Vector plus = x;
    Vector minus = x;
    plus(j) += fd_step;
    minus(j) -= fd_step;
    jac.col(j) = (theta(rc, spec, tight, plus) - theta(rc, spec, tight, minus)) / (2.0 * fd_step);
  }
  return jac;
}

CheckReport check_grad_theta_against(const ReactionCoordinate& rc, const DynamicsSpec& flow_spec,
                                     const DynamicsSpec& kernel_spec,
                                     const ProjectionConfig& cfg, const Vector& x,
                                     double fd_step) {
  const Matrix fd = fd_theta_jacobian(rc, flow_spec, cfg, x, fd_step);
  const ConstraintKernel kernel = compute_kernel(rc, kernel_spec, x);
  return make_report("grad_theta", max_abs(fd - kernel.P), 1e-4, x);
}

CheckReport check_grad_theta(const ReactionCoordinate& rc, const DynamicsSpec& spec,
                             const ProjectionConfig& cfg, const Vector& x, double fd_step) {
  return check_grad_theta_against(rc, spec, spec, cfg, x, fd_step);
}

Vector fd_theta_laplacian(const ReactionCoordinate& rc, const DynamicsSpec& spec,
                          const ProjectionConfig& cfg, const Vector& x, double fd_step) {
  if (!(fd_step > 0.0)) throw std::invalid_argument("fd_theta_laplacian: fd_step must be > 0");
  const ProjectionConfig tight = tightened(cfg);
  const Eigen::Index d = x.size();
  const Matrix a = spec.diffusion(x);
  const Vector center = theta(rc, spec, tight, x);
  const double h2 = fd_step * fd_step;

  auto shifted = [&](Eigen::Index j, double sj, Eigen::Index r, double sr) {
    Vector y = x;
    y(j) += sj * fd_step;
    y(r) += sr * fd_step;
    return theta(rc, spec, tight, y);
  };

  Vector out = Vector::Zero(d);
  for (Eigen::Index j = 0; j < d; ++j) {
    if (a(j, j) != 0.0) {
      Vector plus = x;
      Vector minus = x;
      plus(j) += fd_step;
      minus(j) -= fd_step;
      const Vector second =
          (theta(rc, spec, tight, plus) - 2.0 * center + theta(rc, spec, tight, minus)) / h2;
      out += a(j, j) * second;
    }
    for (Eigen::Index r = j + 1; r < d; ++r) {
      const double weight = a(j, r) + a(r, j);
      if (weight == 0.0) continue;
      const Vector mixed = (shifted(j, 1, r, 1) - shifted(j, 1, r, -1) - shifted(j, -1, r, 1) +
                            shifted(j, -1, r, -1)) /
                           (4.0 * h2);
      out += weight * mixed;
    }
  }
  return out;
}

Vector hessian_contraction_rhs(const ReactionCoordinate& rc, const DynamicsSpec& spec,
                               const Vector& x, double fd_step) {
  if (!(fd_step > 0.0)) {
    throw std::invalid_argument("hessian_contraction_rhs: fd_step must be > 0");
  }
  const Eigen::Index d = x.size();
  Vector div_b = Vector::Zero(d);
  for (Eigen::Index j = 0; j < d; ++j) {
    Vector plus = x;
    Vector minus = x;
    plus(j) += fd_step;
    minus(j) -= fd_step;
    const Matrix b_plus = compute_kernel(rc, spec, plus).B;
    const Matrix b_minus = compute_kernel(rc, spec, minus).B;
    div_b += (b_plus.col(j) - b_minus.col(j)) / (2.0 * fd_step);
  }
  if (spec.constant_diffusion()) return div_b;
  const ConstraintKernel kernel = compute_kernel(rc, spec, x);
  return div_b - kernel.P * spec.diffusion_divergence(x);
}

CheckReport check_hess_theta(const ReactionCoordinate& rc, const DynamicsSpec& spec,
                             const ProjectionConfig& cfg, const Vector& x, double fd_step) {
  const Vector lhs = fd_theta_laplacian(rc, spec, cfg, x, fd_step);
  const Vector rhs = hessian_contraction_rhs(rc, spec, x);
  const double scale = std::max({inf_norm(lhs), inf_norm(rhs), 1e-8});
  return make_report("hess_theta", inf_norm(lhs - rhs) / scale, 1e-2, x);
}

CheckReport check_appendix_identity(const Matrix& grad_xi, const Matrix& diffusion,
                                    const Matrix& antisym, int quad_nodes, double tolerance,
                                    const Vector& witness) {
  if (quad_nodes < 16) throw std::invalid_argument("check_appendix_identity: quad_nodes < 16");
  const ConstraintKernel kernel = compute_kernel(grad_xi, diffusion, antisym);
  const Matrix& phi = kernel.Phi;
  const Matrix& gamma = kernel.Gamma;
  const Eigen::Index k = phi.rows();

  Eigen::EigenSolver<Eigen::MatrixXd> eig(Eigen::MatrixXd(phi), false);
  if (eig.info() != Eigen::Success) throw LinearSolveError("appendix: eigensolve of Phi failed");
  const Eigen::VectorXcd lambda = eig.eigenvalues();
  double min_re = std::numeric_limits<double>::infinity();
  double max_abs_lambda = 0.0;
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    min_re = std::min(min_re, lambda(i).real());
    max_abs_lambda = std::max(max_abs_lambda, std::abs(lambda(i)));
  }
  if (!(min_re > 0.0)) {
    throw std::domain_error("appendix: Phi has an eigenvalue with non-positive real part");
  }

  // Truncation point: exp(-t Gamma) must be within 1e-9 of its limit P.
  double t_max = 1.0 / max_abs_lambda;
  for (int i = 0; i < 200; ++i) {
    const Matrix tail_gap = matrix_exp(-t_max * gamma) - kernel.P;
    if (max_abs(tail_gap) < 1e-9) break;
    t_max *= 1.25;
  }

  const Matrix g_t = grad_xi.transpose();
  const Eigen::FullPivLU<Eigen::MatrixXd> phi_lu{Eigen::MatrixXd(phi)};
  auto phi_solve = [&](const Matrix& rhs) -> Matrix {
    return Matrix(phi_lu.solve(Eigen::MatrixXd(rhs)));
  };

  // The integrand is grad_xi^T exp(-s Gamma) a exp(-s Gamma)^T; nodes advance by
  // one multiplication with exp(-ds Gamma).
  const Eigen::Index d = grad_xi.rows();
  auto trapezoid = [&](int nodes) -> Matrix {
    const double ds = t_max / nodes;
    const Matrix step = matrix_exp(-ds * gamma);
    Matrix e = Matrix::Identity(d, d);
    Matrix sum = Matrix::Zero(k, d);
    for (int i = 0; i <= nodes; ++i) {
      const Matrix value = g_t * e * diffusion * e.transpose();
      sum += (i == 0 || i == nodes ? 0.5 : 1.0) * value;
      e = e * step;
    }
    return ds * sum;
  };
  const int nodes = std::max(quad_nodes, static_cast<int>(std::ceil(20.0 * t_max * max_abs_lambda)));
  const Matrix coarse = trapezoid(nodes);
  const Matrix fine = trapezoid(2 * nodes);
  Matrix integral = (4.0 * fine - coarse) / 3.0;
  // Tail beyond t_max with exp(-s Gamma^T) replaced by its limit P^T.
  integral += phi_solve(matrix_exp(-t_max * phi) * g_t * diffusion * kernel.P.transpose());

  const Matrix drift = diffusion - antisym;
  const Matrix closed_form = 0.5 * phi_solve(g_t * drift);
  double error = max_abs(integral - closed_form);

  // Finite-time exponential identities at t = 1 / |lambda|_max.
  const double t = 1.0 / max_abs_lambda;
  const int fin_nodes = std::max(quad_nodes, 64);
  const Matrix eye = Matrix::Identity(k, k);
  const Matrix phi_inv_t = Matrix(Eigen::MatrixXd(phi.transpose()).inverse());
  const Matrix middle = phi * phi_inv_t + eye;
  auto finite = [&](int n) -> std::pair<Matrix, Matrix> {
    const double ds = t / n;
    const Matrix step = matrix_exp(-ds * phi);
    Matrix e = Matrix::Identity(k, k);
    Matrix first = Matrix::Zero(k, k);
    Matrix second = Matrix::Zero(k, k);
    for (int i = 0; i <= n; ++i) {
      const double w = (i == 0 || i == n) ? 0.5 : 1.0;
      first += w * e;
      second += w * (e * middle * e.transpose());
      e = e * step;
    }
    return {ds * first, ds * second};
  };
  const auto [first_c, second_c] = finite(fin_nodes);
  const auto [first_f, second_f] = finite(2 * fin_nodes);
  const Matrix first = (4.0 * first_f - first_c) / 3.0;
  const Matrix second = (4.0 * second_f - second_c) / 3.0;
  const Matrix e_t = matrix_exp(-t * phi);
  const Matrix first_exact = (eye - e_t) * Matrix(Eigen::MatrixXd(phi).inverse());
  const Matrix second_exact = (eye - e_t * e_t.transpose()) * phi_inv_t;
  error = std::max({error, max_abs(first - first_exact), max_abs(second - second_exact)});

  return make_report("appendix_identity", error, tolerance, witness);
}

CheckReport check_kernel_identities(const ReactionCoordinate& rc, const DynamicsSpec& spec,
                                    const Vector& x, double tolerance) {
  const ConstraintKernel kernel = compute_kernel(rc, spec, x);
  const Matrix grad = rc.jacobian(x);
  const Matrix a = spec.diffusion(x);
  const Matrix drift = a - spec.antisymmetric();
  const Eigen::Index d = x.size();
  const Matrix eye = Matrix::Identity(d, d);
  const Matrix& P = kernel.P;

  double error = 0.0;
  error = std::max(error, max_abs(P * P - P));
  error = std::max(error, max_abs(grad.transpose() * P));
  error = std::max(error, max_abs(P * a * P.transpose() - kernel.B_sym));
  error = std::max(error, max_abs(kernel.B_sym + kernel.B_asym - kernel.B));
  error = std::max(error, max_abs(kernel.B_sym - kernel.B_sym.transpose()));
  error = std::max(error, max_abs(kernel.B_asym + kernel.B_asym.transpose()));

  if (grad.cols() < d) {
    const Matrix V = nullspace_basis(grad);
    error = std::max(error, max_abs(P * V - V));
    const Eigen::PartialPivLU<Eigen::MatrixXd> drift_lu{Eigen::MatrixXd(drift)};
    const Matrix drift_inv = Matrix(drift_lu.inverse());
    const Matrix pi = V.transpose() * drift_inv * V;
    const Matrix pi_inv = Matrix(Eigen::MatrixXd(pi).fullPivLu().inverse());
    const Matrix phi_inv = Matrix(Eigen::MatrixXd(kernel.Phi).fullPivLu().inverse());
    const Matrix sum = V * pi_inv * V.transpose() * drift_inv +
                       drift * grad * phi_inv * grad.transpose();
    error = std::max(error, max_abs(sum - eye));
  }

  if (max_abs(spec.antisymmetric()) == 0.0) {
    error = std::max(error, max_abs(kernel.B - kernel.B.transpose()));
  }

  Eigen::EigenSolver<Eigen::MatrixXd> eig(Eigen::MatrixXd(kernel.Phi), false);
  if (eig.info() != Eigen::Success || !(eig.eigenvalues().real().minCoeff() > 0.0)) {
    error = std::numeric_limits<double>::infinity();
  }
  if (std::isnan(error)) error = std::numeric_limits<double>::infinity();
  return make_report("kernel_identities", error, tolerance, x);
}

// --- synthetic cases --------------------------------------------------------

namespace {

Matrix random_antisymmetric(int d, RandomStream& rng, double bound) {
  Matrix A = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      A(i, j) = bound * (2.0 * rng.uniform() - 1.0);
      A(j, i) = -A(i, j);
    }
  }
  return A;
}

Vector random_unit(int d, RandomStream& rng) {
  Vector u(d);
  for (int i = 0; i < d; ++i) u(i) = rng.normal();
  return u / u.norm();
}

DynamicsSpec zero_potential(int d) {
  return DynamicsSpec(
      d, [](const Vector&) { return 0.0; },
      [d](const Vector&) -> Vector { return Vector::Zero(d); }, 1.0);
}

SyntheticCase circle_case(RandomStream& rng, int count) {
  SyntheticCase c{"d2k1", std::make_shared<SphereCoordinate>(2), zero_potential(2), {}};
  c.spec.set_antisymmetric(make_matrix({{0.0, 1.0}, {-1.0, 0.0}}));
  for (int i = 0; i < count; ++i) {
    const double angle = 2.0 * std::numbers::pi * rng.uniform();
    c.points.push_back(make_vector({std::cos(angle), std::sin(angle)}));
  }
  return c;
}

SyntheticCase ellipsoid_case(RandomStream& rng, int count) {
  static const double weights[3] = {1.0, 2.0, 0.5};
  auto value = [](const Vector& x) -> Vector {
    double q = 0.0;
    for (int i = 0; i < 3; ++i) q += weights[i] * x(i) * x(i);
    return make_vector({0.5 * (q - 1.0)});
  };
  auto jacobian = [](const Vector& x) -> Matrix {
    Matrix g(3, 1);
    for (int i = 0; i < 3; ++i) g(i, 0) = weights[i] * x(i);
    return g;
  };
  auto hessian = [](const Vector&, int) -> Matrix {
    Matrix h = Matrix::Zero(3, 3);
    for (int i = 0; i < 3; ++i) h(i, i) = weights[i];
    return h;
  };
  SyntheticCase c{"d3k1", std::make_shared<FunctionCoordinate>(3, 1, value, jacobian, hessian),
                  zero_potential(3), {}};
  c.spec.set_diffusion(
      [](const Vector& x) -> Matrix {
        Matrix a = Matrix::Zero(3, 3);
        for (int i = 0; i < 3; ++i) a(i, i) = 1.0 + 0.3 * x(i) * x(i);
        return a;
      },
      [](const Vector& x) -> Matrix {
        Matrix s = Matrix::Zero(3, 3);
        for (int i = 0; i < 3; ++i) s(i, i) = std::sqrt(1.0 + 0.3 * x(i) * x(i));
        return s;
      },
      3, [](const Vector& x) -> Vector { return 0.6 * x; });
  c.spec.set_antisymmetric(random_antisymmetric(3, rng, 2.0));
  for (int i = 0; i < count; ++i) {
    const Vector u = random_unit(3, rng);
    double q = 0.0;
    for (int j = 0; j < 3; ++j) q += weights[j] * u(j) * u(j);
    c.points.push_back(u / std::sqrt(q));
  }
  return c;
}

SyntheticCase coupled_circles_case(RandomStream& rng, int count) {
  auto value = [](const Vector& x) -> Vector {
    return make_vector({0.5 * (x(0) * x(0) + x(1) * x(1) - 1.0),
                        0.5 * (x(2) * x(2) + x(3) * x(3) - 1.0) + 0.25 * x(0) * x(2)});
  };
  auto jacobian = [](const Vector& x) -> Matrix {
    Matrix g = Matrix::Zero(4, 2);
    g(0, 0) = x(0);
    g(1, 0) = x(1);
    g(0, 1) = 0.25 * x(2);
    g(2, 1) = x(2) + 0.25 * x(0);
    g(3, 1) = x(3);
    return g;
  };
  auto hessian = [](const Vector&, int alpha) -> Matrix {
    Matrix h = Matrix::Zero(4, 4);
    if (alpha == 0) {
      h(0, 0) = h(1, 1) = 1.0;
    } else {
      h(2, 2) = h(3, 3) = 1.0;
      h(0, 2) = h(2, 0) = 0.25;
    }
    return h;
  };
  SyntheticCase c{"d4k2", std::make_shared<FunctionCoordinate>(4, 2, value, jacobian, hessian),
                  zero_potential(4), {}};
  Matrix g(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) g(i, j) = 2.0 * rng.uniform() - 1.0;
  const Matrix a = Matrix::Identity(4, 4) + 0.3 * g * g.transpose();
  const Matrix sigma = Matrix(Eigen::LLT<Eigen::MatrixXd>(Eigen::MatrixXd(a)).matrixL());
  c.spec.set_constant_diffusion(a, sigma);
  c.spec.set_antisymmetric(random_antisymmetric(4, rng, 2.0));

  ProjectionConfig tight;
  tight.eps_tol = 1e-13;
  tight.max_rk_steps = 100000;
  const DynamicsSpec reversible = c.spec.reversible();
  while (static_cast<int>(c.points.size()) < count) {
    const double u = 2.0 * std::numbers::pi * rng.uniform();
    const double v = 2.0 * std::numbers::pi * rng.uniform();
    const Vector start = make_vector({std::cos(u), std::sin(u), std::cos(v), std::sin(v)});
    const ProjectionResult result = project(*c.coordinate, reversible, tight, start);
    if (!result.converged) continue;
    if (smallest_singular_value(*c.coordinate, result.point) < 0.1) continue;
    c.points.push_back(result.point);
  }
  return c;
}

}  // namespace

std::vector<SyntheticCase> make_synthetic_cases(std::uint64_t seed, int points_per_case) {
  if (points_per_case < 1) throw std::invalid_argument("make_synthetic_cases: need >= 1 point");
  std::vector<SyntheticCase> cases;
  RandomStream rng_circle(derive_seed(seed, {2, 1}));
  RandomStream rng_ellipsoid(derive_seed(seed, {3, 1}));
  RandomStream rng_coupled(derive_seed(seed, {4, 2}));
  cases.push_back(circle_case(rng_circle, points_per_case));
  cases.push_back(ellipsoid_case(rng_ellipsoid, points_per_case));
  cases.push_back(coupled_circles_case(rng_coupled, points_per_case));
  return cases;
}

// --- suite -------------------------------------------------------------------

namespace {

struct SuiteCase {
  std::string label;
  std::shared_ptr<const ReactionCoordinate> coordinate;
  std::vector<DynamicsSpec> specs;  // one per point
  std::vector<Vector> points;
};

using Check = CheckReport (*)(const SuiteCase&, std::size_t, const VerifyOptions&);

CheckReport kernel_check(const SuiteCase& c, std::size_t i, const VerifyOptions&) {
  return check_kernel_identities(*c.coordinate, c.specs[i], c.points[i]);
}

CheckReport grad_check(const SuiteCase& c, std::size_t i, const VerifyOptions& options) {
  const DynamicsSpec& spec = c.specs[i];
  if (!options.inject_fault) {
    return check_grad_theta(*c.coordinate, spec, options.projection, c.points[i]);
  }
  DynamicsSpec flipped = spec;
  flipped.set_antisymmetric(-spec.antisymmetric());
  return check_grad_theta_against(*c.coordinate, spec, flipped, options.projection, c.points[i]);
}

CheckReport hess_check(const SuiteCase& c, std::size_t i, const VerifyOptions& options) {
  return check_hess_theta(*c.coordinate, c.specs[i], options.projection, c.points[i]);
}

CheckReport appendix_check(const SuiteCase& c, std::size_t i, const VerifyOptions&) {
  const Vector& x = c.points[i];
  const DynamicsSpec& spec = c.specs[i];
  return check_appendix_identity(c.coordinate->jacobian(x), spec.diffusion(x),
                                 spec.antisymmetric(), 4000, 1e-6, x);
}

CheckReport run_over_points(const std::string& name, double tolerance, Check check,
                            const SuiteCase& c, const VerifyOptions& options) {
  CheckReport report = make_report(name + "/" + c.label, 0.0, tolerance, c.points.front());
  for (std::size_t i = 0; i < c.points.size(); ++i) {
    CheckReport one;
    try {
      one = check(c, i, options);
    } catch (const std::exception&) {
      one = make_report(name, std::numeric_limits<double>::infinity(), tolerance, c.points[i]);
    }
    merge_into(report, one);
  }
  return report;
}

SuiteCase torus_case(const VerifyOptions& options) {
  const TorusProblem problem = make_test2();
  SuiteCase c{"torus", std::make_shared<TorusSurface>(problem.surface), {}, {}};
  RandomStream rng(derive_seed(options.seed, {3, 1, 0}));
  const Matrix abar = abar_matrix();
  for (int i = 0; i < options.torus_points; ++i) {
    const double phi = 2.0 * std::numbers::pi * rng.uniform();
    const double th = 2.0 * std::numbers::pi * rng.uniform();
    c.points.push_back(problem.surface.embed(phi, th));
    Matrix A = Matrix::Zero(3, 3);
    if (i % 3 == 1) A = abar;
    if (i % 3 == 2) A = random_antisymmetric(3, rng, 2.0);
    c.specs.push_back(problem.dynamics(A));
  }
  return c;
}

SuiteCase from_synthetic(const SyntheticCase& s) {
  SuiteCase c{s.label, s.coordinate, {}, s.points};
  c.specs.assign(s.points.size(), s.spec);
  return c;
}

/// k = d with grad_xi = I and A = 0: Phi = Gamma = a symmetric positive definite.
CheckReport symmetric_appendix_case(std::uint64_t seed) {
  RandomStream rng(derive_seed(seed, {3, 3}));
  Matrix g(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) g(i, j) = 2.0 * rng.uniform() - 1.0;
  const Matrix a = Matrix::Identity(3, 3) + 0.3 * g * g.transpose();
  CheckReport report = check_appendix_identity(Matrix::Identity(3, 3), a, Matrix::Zero(3, 3),
                                               4000, 1e-8, Vector::Zero(3));
  report.name = "appendix_identity/d3k3_symmetric";
  return report;
}

}  // namespace

std::vector<CheckReport> run_verify_suite(const VerifyOptions& options) {
  if (options.torus_points < 0) throw std::invalid_argument("verify: negative torus point count");
  if (options.synthetic_points < 1) throw std::invalid_argument("verify: need synthetic points");
  options.projection.validate();

  std::vector<SuiteCase> cases;
  if (options.torus_points > 0) cases.push_back(torus_case(options));
  for (const SyntheticCase& s : make_synthetic_cases(options.seed, options.synthetic_points)) {
    cases.push_back(from_synthetic(s));
  }

  struct Job {
    const char* name;
    double tolerance;
    Check check;
  };
  const Job jobs[] = {{"kernel_identities", 1e-9, kernel_check},
                      {"grad_theta", 1e-4, grad_check},
                      {"hess_theta", 1e-2, hess_check},
                      {"appendix_identity", 1e-6, appendix_check}};

  std::vector<std::future<CheckReport>> futures;
  for (const Job& job : jobs) {
    for (const SuiteCase& c : cases) {
      futures.push_back(std::async(std::launch::async, run_over_points, std::string(job.name),
                                   job.tolerance, job.check, std::cref(c), std::cref(options)));
    }
  }
  futures.push_back(std::async(std::launch::async, symmetric_appendix_case, options.seed));

  std::vector<CheckReport> reports;
  reports.reserve(futures.size());
  for (auto& future : futures) reports.push_back(future.get());
  return reports;
}

}  // namespace nrs
