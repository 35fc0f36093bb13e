#include <gtest/gtest.h>

#include <cmath>

#include "nssol/error.hpp"
#include "nssol/fields.hpp"

namespace nssol {
namespace {

std::vector<double> span(double lo, double hi, int n) {
  std::vector<double> v;
  for (int i = 0; i < n; ++i) v.push_back(lo + (hi - lo) * i / (n - 1));
  return v;
}

TEST(EvalPoint, FlatStaticState) {
  const DensityShape flat{isothermal_profile(1, 0, 0)};
  const ScalingFn still = powerlaw_scaling(1, 0, 1, 1);
  const auto s = eval_point(flat, still, 3, 0.7, 1.9);
  EXPECT_EQ(s.rho, 1.0);
  EXPECT_EQ(s.u, 0.0);
}

TEST(EvalPoint, PolytropicProfileAtRest) {
  const auto s = eval_point(Profile{polytropic_profile(2, 1)}, powerlaw_scaling(1, 0, 1, 1), 1, 0.0, 2.0);
  EXPECT_DOUBLE_EQ(s.rho, 3.0);
  EXPECT_EQ(s.u, 0.0);
}

TEST(EvalPoint, LinearScaling) {
  // a(t) = 1 + 2t as a power law with s = 1.
  const auto s = eval_point(Profile{isothermal_profile(1, 0, 0)}, powerlaw_scaling(1, 2, 1, 1), 2, 1.0, 3.0);
  EXPECT_NEAR(s.rho, 1.0 / 9.0, 1e-15);
  EXPECT_NEAR(s.u, 2.0, 1e-15);
}

TEST(EvalPoint, ExponentialShapeMap) {
  const DensityShape shape{pressureless_profile(2, 1, 1, 3, 1), ShapeMap::Exponential};
  EXPECT_NEAR(shape(0.0), std::exp(1.0), 1e-15);
}

TEST(EvalGrid, SinglePointMatchesEvalPoint) {
  const DensityShape shape{polytropic_profile(2.5, 1.2)};
  const ScalingFn sc = powerlaw_scaling(1.5, 0.5, 1, 0.5);
  const FieldGrid g = eval_grid(shape, sc, 2, {0.4}, {0.8});
  const auto s = eval_point(shape, sc, 2, 0.4, 0.8);
  EXPECT_EQ(g.rho_at(0, 0), s.rho);
  EXPECT_EQ(g.u_at(0, 0), s.u);
}

TEST(EvalGrid, DeterministicAcrossThreadCounts) {
  const DensityShape shape{isothermal_profile(1, -0.5, 0.1)};
  const ScalingFn sc = integrate_polytropic(2, 1, 1, 1, 1, 0.5, 1.0);
  const auto t = span(0, 1, 17), r = span(0.05, 3, 29);
  const FieldGrid one = eval_grid(shape, sc, 3, t, r, 1);
  const FieldGrid many = eval_grid(shape, sc, 3, t, r, 7);
  EXPECT_EQ(one.rho, many.rho);
  EXPECT_EQ(one.u, many.u);
}

TEST(EvalGrid, VelocityIsLinearInRadius) {
  const ScalingFn sc = integrate_pressureless(2, 1, 3, 1, 0.5, 1.0);
  const FieldGrid g = eval_grid(DensityShape{pressureless_profile(2, 1, 1, 3, 1)}, sc, 3, span(0, 1, 9),
                                span(0.01, 2, 13));
  for (std::size_t i = 0; i < g.t_values.size(); ++i) {
    const auto v = evaluate(sc, g.t_values[i]);
    const double ratio = v.adot / v.a;
    for (std::size_t j = 0; j < g.r_values.size(); ++j) {
      EXPECT_LT(std::abs(g.u_at(i, j) / g.r_values[j] - ratio), 1e-12 * (1 + std::abs(ratio)));
    }
  }
}

TEST(EvalGrid, SelfSimilarCollapse) {
  const int N = 3;
  const DensityShape shape{isothermal_profile(1.3, -0.7, 0.2)};
  const ScalingFn sc = integrate_polytropic(2, 1, 1, 1, 1, 0.5, 1.0);
  const double t1 = 0.2, t2 = 0.8, r1 = 0.9;
  const double a1 = evaluate(sc, t1).a, a2 = evaluate(sc, t2).a;
  const double r2 = r1 / a1 * a2;
  const double q1 = eval_point(shape, sc, N, t1, r1).rho * std::pow(a1, N);
  const double q2 = eval_point(shape, sc, N, t2, r2).rho * std::pow(a2, N);
  EXPECT_NEAR(q1, q2, 1e-12 * q1);
}

TEST(EvalGrid, VacuumOutsideSupport) {
  const double theta = 1.5, lambda = 2, kappa = 1, alpha = 1;
  const int N = 2;
  const Profile p = pressureless_profile(theta, lambda, kappa, N, alpha);
  const double z_star = std::sqrt(2 * N * kappa * theta * std::pow(alpha, theta - 1) / ((theta - 1) * lambda));
  const ScalingFn sc = powerlaw_scaling(1, 0, 1, 1);
  const FieldGrid g = eval_grid(DensityShape{p}, sc, N, {0.0}, span(0.1, 4, 40));
  for (std::size_t j = 0; j < g.r_values.size(); ++j) {
    EXPECT_GE(g.rho_at(0, j), 0.0);
    if (g.r_values[j] > z_star) {
      EXPECT_EQ(g.rho_at(0, j), 0.0);
    } else {
      EXPECT_GT(g.rho_at(0, j), 0.0);
    }
  }
}

TEST(EvalGrid, RejectsNonPositiveRadius) {
  const DensityShape flat{isothermal_profile(1, 0, 0)};
  try {
    eval_grid(flat, powerlaw_scaling(1, 0, 1, 1), 3, {0.0}, {0.0, 1.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("r_min must be > 0"), std::string::npos);
  }
}

TEST(EvalGrid, PointFailureNamesCoordinates) {
  const DensityShape flat{isothermal_profile(1, 0, 0)};
  try {
    eval_grid(flat, powerlaw_scaling(1, -1, 1, 0.5), 3, {0.5, 1.5}, {1.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Domain);
    EXPECT_NE(std::string(e.what()).find("1.5"), std::string::npos);
  }
}

TEST(MakeSolution, RejectsInvalidFamily) {
  ModelParams p;
  p.gamma = 2;
  EXPECT_THROW(make_solution(p, IsothermalFamily{}, 1.0), Error);
}

}  // namespace
}  // namespace nssol
