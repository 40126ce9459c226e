#include "nrsampler/projection.hpp"

#include <cmath>
#include <stdexcept>

#include "nrsampler/errors.hpp"

namespace nrs {

void ProjectionConfig::validate() const {
  if (!(kappa >= 0.0 && kappa < 1.0)) {
    throw std::invalid_argument("ProjectionConfig: kappa must lie in [0, 1)");
  }
  if (!(initial_dt > 0.0)) throw std::invalid_argument("ProjectionConfig: initial_dt <= 0");
  if (!(eps_tol > 0.0)) throw std::invalid_argument("ProjectionConfig: eps_tol <= 0");
  if (max_rk_steps < 1) throw std::invalid_argument("ProjectionConfig: max_rk_steps < 1");
}

namespace {

/// Evaluates the flow field together with |xi| at one point. For constant
/// diffusion the matrix a - A is computed once per projection.
class FlowField {
 public:
  FlowField(const ReactionCoordinate& rc, const DynamicsSpec& spec, double kappa,
            const Vector& x0)
      : rc_(rc), spec_(spec), kappa_(kappa), constant_(spec.constant_diffusion()) {
    if (constant_) drift_ = spec.drift_matrix(x0);
  }

  /// Returns |xi(x)| and writes the right-hand side into `rhs`.
  double operator()(const Vector& x, Vector& rhs) const {
    const Vector xi = rc_.value(x);
    const double norm = xi.norm();
    if (norm == 0.0) {
      rhs.setZero(x.size());
      return 0.0;
    }
    const Matrix grad = rc_.jacobian(x);
    check_rank(grad, x);
    rhs.noalias() = grad * xi;
    if (constant_) {
      rhs = drift_ * rhs;
    } else {
      rhs = spec_.drift_matrix(x) * rhs;
    }
    rhs *= -0.5 * (2.0 - kappa_) * scale(norm);
    return norm;
  }

 private:
  /// |xi|^{-kappa}; the common values avoid pow().
  double scale(double norm) const {
    if (kappa_ == 0.0) return 1.0;
    if (kappa_ == 0.5) return 1.0 / std::sqrt(norm);
    return std::pow(norm, -kappa_);
  }

  static void check_rank(const Matrix& grad, const Vector& x) {
    if (grad.cols() == 1) {
      const double norm = grad.norm();
      if (!(norm >= 1e-10)) {
        throw RankDeficientError("projection: grad xi vanished along the flow", x, norm);
      }
      return;
    }
    require_full_rank(grad, x);
  }

  const ReactionCoordinate& rc_;
  const DynamicsSpec& spec_;
  double kappa_;
  bool constant_;
  Matrix drift_;
};

}  // namespace

Vector flow_rhs(const ReactionCoordinate& rc, const DynamicsSpec& spec, double kappa,
                const Vector& x) {
  if (!(kappa >= 0.0 && kappa < 1.0)) {
    throw std::invalid_argument("flow_rhs: kappa must lie in [0, 1)");
  }
  FlowField field(rc, spec, kappa, x);
  Vector rhs(x.size());
  field(x, rhs);
  return rhs;
}

ProjectionResult project(const ReactionCoordinate& rc, const DynamicsSpec& spec,
                         const ProjectionConfig& cfg, const Vector& x) {
  FlowField field(rc, spec, cfg.kappa, x);

  ProjectionResult result;
  result.point = x;
  Vector k1(x.size());
  double xi_norm = field(x, k1);
  result.initial_xi_norm = xi_norm;
  result.final_xi_norm = xi_norm;
  if (xi_norm < cfg.eps_tol) {
    result.converged = true;
    return result;
  }

  Vector& current = result.point;
  Vector k2(x.size()), k3(x.size()), k4(x.size()), trial(x.size());
  double dt = cfg.initial_dt;
  int attempts = 0;
  while (attempts < cfg.max_rk_steps) {
    ++attempts;
    trial = current + (0.5 * dt) * k1;
    field(trial, k2);
    trial = current + (0.75 * dt) * k2;
    field(trial, k3);
    trial = current + dt * ((2.0 / 9.0) * k1 + (1.0 / 3.0) * k2 + (4.0 / 9.0) * k3);
    const double trial_norm = field(trial, k4);

    if (!std::isfinite(trial_norm)) break;
    if (cfg.halving && trial_norm > xi_norm) {
      dt *= 0.5;
      continue;
    }
    current = trial;
    k1 = k4;  // first-same-as-last
    xi_norm = trial_norm;
    ++result.rk_steps;
    if (xi_norm < cfg.eps_tol) {
      result.converged = true;
      break;
    }
  }
  result.final_xi_norm = xi_norm;
  return result;
}

}  // namespace nrs
