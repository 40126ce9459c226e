#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "nrsampler/errors.hpp"
#include "nrsampler/geometry.hpp"
#include "nrsampler/torus_problems.hpp"
#include "test_helpers.hpp"

namespace nrs {
namespace {

using testing::kPi;

TEST(TorusXi, ValueOnEmbeddedPoint) {
  EXPECT_NEAR(torus_xi(make_vector({1.5, 0.0, 0.0}), 1.0, 0.5), 0.0, 1e-15);
}

TEST(TorusXi, ValueAtOrigin) {
  EXPECT_DOUBLE_EQ(torus_xi(make_vector({0.0, 0.0, 0.0}), 1.0, 0.5), 0.5625);
}

TEST(TorusXi, ValueOnAxis) {
  EXPECT_DOUBLE_EQ(torus_xi(make_vector({0.0, 0.0, 0.5}), 1.0, 0.5), 1.0);
}

TEST(TorusEmbed, Examples) {
  EXPECT_LT((torus_embed(0.0, 0.0, 1.0, 0.5) - make_vector({1.5, 0.0, 0.0})).norm(), 1e-15);
  EXPECT_LT((torus_embed(kPi, 0.0, 1.0, 0.5) - make_vector({0.5, 0.0, 0.0})).norm(), 1e-15);
  EXPECT_LT((torus_embed(kPi / 2, kPi / 2, 1.0, 0.5) - make_vector({0.0, 1.0, 0.5})).norm(),
            1e-15);
}

TEST(TorusEmbed, RandomPointsLieOnSurface) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 10000; ++i) {
    const double phi = testing::uniform_angle(rng);
    const double theta = testing::uniform_angle(rng);
    ASSERT_LT(std::abs(torus_xi(torus_embed(phi, theta, 1.0, 0.5), 1.0, 0.5)), 1e-10);
  }
}

TEST(TorusAngles, RoundTripAndRange) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 1000; ++i) {
    const double phi = testing::uniform_angle(rng);
    const double theta = testing::uniform_angle(rng);
    const TorusAngles a = torus_angles(torus_embed(phi, theta, 1.0, 0.5), 1.0);
    ASSERT_GE(a.phi, 0.0);
    ASSERT_LT(a.phi, 2 * kPi);
    ASSERT_GE(a.theta, 0.0);
    ASSERT_LT(a.theta, 2 * kPi);
    ASSERT_NEAR(std::remainder(a.phi - phi, 2 * kPi), 0.0, 1e-12);
    ASSERT_NEAR(std::remainder(a.theta - theta, 2 * kPi), 0.0, 1e-12);
  }
}

TEST(SurfaceDensity, Examples) {
  const double norm = 4 * kPi * kPi;
  EXPECT_DOUBLE_EQ(surface_density(0.0, 1.0, 0.5), 1.5 / norm);
  EXPECT_NEAR(surface_density(kPi / 2, 1.0, 0.5), 1.0 / norm, 1e-16);
}

TEST(SurfaceDensity, IntegratesToOne) {
  const int n = 256;
  const double cell = 2 * kPi / n;
  double total = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) total += surface_density(i * cell, 1.0, 0.5) * cell * cell;
  EXPECT_NEAR(total, 1.0, 1e-10);
}

TEST(TorusSurface, GradientNormClosedForm) {
  const TorusSurface torus(1.0, 0.5);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 1000; ++i) {
    const double phi = testing::uniform_angle(rng);
    const Vector x = torus.embed(phi, testing::uniform_angle(rng));
    const double expected = torus.gradient_norm_on_surface(phi);
    ASSERT_DOUBLE_EQ(expected, 8.0 * 0.5 * (1.0 + 0.5 * std::cos(phi)));
    ASSERT_NEAR(torus.jacobian(x).norm() / expected, 1.0, 1e-8);
  }
}

TEST(TorusSurface, AnalyticJacobianMatchesFiniteDifferences) {
  const TorusSurface torus(1.0, 0.5);
  std::mt19937_64 rng(4);
  for (int i = 0; i < 100; ++i) {
    const Vector x = torus.embed(testing::uniform_angle(rng), testing::uniform_angle(rng));
    const Matrix fd = fd_jacobian([&](const Vector& y) { return torus.value(y); }, x, 1);
    ASSERT_LT(max_abs(fd - torus.jacobian(x)), 1e-7);
  }
}

TEST(TorusSurface, FiniteDifferenceHessianMatchesAnalytic) {
  const TorusSurface torus(1.0, 0.5);
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    const Vector x = torus.embed(testing::uniform_angle(rng), testing::uniform_angle(rng));
    const Matrix analytic = torus.hessian(x, 0);
    const Matrix fd = fd_hessian(torus, x, 0);
    ASSERT_LT(max_abs(analytic - analytic.transpose()), 1e-10);
    ASSERT_LT(max_abs(fd - fd.transpose()), 1e-10);
    ASSERT_LT(max_abs(fd - analytic), 1e-5);
  }
}

TEST(TorusSurface, RejectsInvalidRadii) {
  EXPECT_THROW(TorusSurface(0.5, 1.0), std::invalid_argument);
  EXPECT_THROW(TorusSurface(1.0, 0.0), std::invalid_argument);
}

TEST(FunctionCoordinate, FiniteDifferenceFallbacks) {
  const FunctionCoordinate coord(3, 1, [](const Vector& x) -> Vector {
    return make_vector({x(0) * x(0) * x(1) + std::sin(x(2)) - 1.0});
  });
  EXPECT_EQ(coord.ambient_dim(), 3);
  EXPECT_EQ(coord.constraint_dim(), 1);
  const Vector x = make_vector({0.7, -0.4, 0.3});
  const Vector exact = make_vector({2 * x(0) * x(1), x(0) * x(0), std::cos(x(2))});
  EXPECT_LT((coord.jacobian(x).col(0) - exact).cwiseAbs().maxCoeff(), 1e-9);
  const Matrix h = coord.hessian(x, 0);
  EXPECT_LT(max_abs(h - h.transpose()), 1e-10);
  EXPECT_NEAR(h(0, 0), 2 * x(1), 1e-5);
  EXPECT_NEAR(h(0, 1), 2 * x(0), 1e-5);
  EXPECT_NEAR(h(2, 2), -std::sin(x(2)), 1e-5);
}

TEST(FunctionCoordinate, RejectsBadDimensions) {
  auto value = [](const Vector& x) -> Vector { return x.head(1); };
  EXPECT_THROW(FunctionCoordinate(2, 3, value), std::invalid_argument);
  EXPECT_THROW(FunctionCoordinate(0, 0, value), std::invalid_argument);
}

TEST(SphereCoordinate, ValueJacobianHessian) {
  const SphereCoordinate circle(2);
  const Vector x = make_vector({2.0, 0.0});
  EXPECT_DOUBLE_EQ(circle.value(x)(0), 1.5);
  EXPECT_LT((circle.jacobian(x).col(0) - x).norm(), 1e-15);
  EXPECT_LT(max_abs(circle.hessian(x, 0) - Matrix::Identity(2, 2)), 1e-15);
}

TEST(RankCheck, TorusGradientVanishesOnAxisCircle) {
  const TorusSurface torus(1.0, 0.5);
  const Vector origin = make_vector({0.0, 0.0, 0.0});
  EXPECT_LT(smallest_singular_value(torus, origin), 1e-10);
  EXPECT_THROW(require_full_rank(torus.jacobian(origin), origin), RankDeficientError);
  const Vector on = torus.embed(0.3, 0.2);
  EXPECT_GT(smallest_singular_value(torus, on), 1.0);
  EXPECT_NO_THROW(require_full_rank(torus.jacobian(on), on));
}

TEST(RankCheck, ErrorCarriesPointAndSingularValue) {
  const Vector origin = make_vector({0.0, 0.0, 0.0});
  try {
    require_full_rank(Matrix::Zero(3, 1), origin);
    FAIL() << "expected RankDeficientError";
  } catch (const RankDeficientError& e) {
    EXPECT_EQ(e.point().size(), 3);
    EXPECT_EQ(e.smallest_singular_value(), 0.0);
  }
}

TEST(Quadrature, UniformCosineVanishes) {
  const double value = quadrature_expectation([](double phi, double) { return std::cos(phi); },
                                              [](double, double) { return 0.0; }, 3.0, 64);
  EXPECT_NEAR(value, 0.0, 1e-10);
}

TEST(Quadrature, Test1MatchesReferenceAndBesselOracle) {
  const TorusProblem problem = make_test1();
  const double value = problem.reference_value(512);
  EXPECT_NEAR(value, 0.303, 0.002);
  EXPECT_NEAR(value, testing::test1_oracle(), 1e-9);
}

TEST(Quadrature, Test2MatchesReferenceAndSimpsonOracle) {
  const TorusProblem problem = make_test2();
  const double value = problem.reference_value(512);
  EXPECT_NEAR(value, 1.923, 0.002);
  EXPECT_NEAR(value, testing::test2_oracle(), 1e-6);
}

TEST(Quadrature, GridDoublingInvariance) {
  for (const TorusProblem& problem : {make_test1(), make_test2()}) {
    const double coarse = problem.reference_value(256);
    const double fine = problem.reference_value(512);
    EXPECT_NEAR(coarse / fine, 1.0, 1e-6) << problem.name;
  }
}

TEST(Quadrature, RejectsSmallGridAndNonFinite) {
  auto zero = [](double, double) { return 0.0; };
  EXPECT_THROW(quadrature_expectation(zero, zero, 1.0, 15), std::invalid_argument);
  auto bad = [](double, double) { return std::numeric_limits<double>::quiet_NaN(); };
  EXPECT_THROW(quadrature_expectation(bad, zero, 1.0, 32), std::domain_error);
  EXPECT_THROW(quadrature_expectation(zero, bad, 1.0, 32), std::domain_error);
}

TEST(TorusProblems, ObservablesAgreeWithAngleForms) {
  std::mt19937_64 rng(6);
  for (const TorusProblem& problem : {make_test1(), make_test2(), make_uniform()}) {
    for (int i = 0; i < 200; ++i) {
      const double phi = testing::uniform_angle(rng);
      const double theta = testing::uniform_angle(rng);
      const Vector x = problem.surface.embed(phi, theta);
      ASSERT_NEAR(problem.observable(x), problem.observable_angles(phi, theta), 1e-9);
      ASSERT_NEAR(problem.potential(x), problem.potential_angles(phi, theta), 1e-12);
      const Matrix fd =
          fd_jacobian([&](const Vector& y) { return make_vector({problem.potential(y)}); }, x, 1);
      ASSERT_LT((fd.col(0) - problem.grad_potential(x)).cwiseAbs().maxCoeff(), 1e-6);
    }
  }
}

TEST(TorusProblems, LookupByName) {
  EXPECT_TRUE(make_problem("test1").has_value());
  EXPECT_TRUE(make_problem("test2").has_value());
  EXPECT_TRUE(make_problem("uniform").has_value());
  EXPECT_FALSE(make_problem("test3").has_value());
  const Matrix abar = abar_matrix();
  EXPECT_EQ(max_abs(abar + abar.transpose()), 0.0);
  EXPECT_EQ(abar(0, 1), 2.0);
  EXPECT_EQ(abar(1, 0), -2.0);
}

}  // namespace
}  // namespace nrs
