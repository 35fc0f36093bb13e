#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "nssol/error.hpp"
#include "nssol/scaling.hpp"
#include "oracle.hpp"

namespace nssol {
namespace {

double a_at(const ScalingFn& fn, double t) { return evaluate(fn, t).a; }

TEST(PowerLawScaling, ClosedForm) {
  const ScalingFn flat = powerlaw_scaling(1, 0, 1, 1);
  EXPECT_DOUBLE_EQ(evaluate(flat, 5.0).a, 1.0);
  EXPECT_DOUBLE_EQ(evaluate(flat, 5.0).adot, 0.0);

  const ScalingFn fn = powerlaw_scaling(2, 1, 1, 0.5);
  EXPECT_DOUBLE_EQ(evaluate(fn, 3.0).a, 4.0);
  EXPECT_DOUBLE_EQ(evaluate(fn, 3.0).adot, 0.5);
}

TEST(PowerLawScaling, DomainBoundary) {
  const ScalingFn fn = powerlaw_scaling(1, -1, 2, 0.5);
  try {
    evaluate(fn, 2.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Domain);
  }
  EXPECT_THROW(powerlaw_scaling(0, 1, 1, 0.5), Error);
  EXPECT_THROW(powerlaw_scaling(1, 1, 0, 0.5), Error);
  EXPECT_THROW(powerlaw_scaling(1, 1, 1, 1.5), Error);
}

TEST(VanishingTime, PowerLaw) {
  EXPECT_DOUBLE_EQ(*vanishing_time(powerlaw_scaling(1, -1, 2, 0.5)), 2.0);
  EXPECT_FALSE(vanishing_time(powerlaw_scaling(1, 1, 2, 0.5)).has_value());
}

TEST(Isothermal, FlatProfileIsLinear) {
  const ScalingFn fn = integrate_isothermal(0, 1, 1, 3, 1, 2, 3);
  EXPECT_NEAR(a_at(fn, 3.0), 7.0, 1e-10);
  EXPECT_NEAR(evaluate(fn, 1.5).adot, 2.0, 1e-10);
}

oracle::Accel isothermal_accel(double B, double K, double kappa, int N) {
  return [=](double a, double v) { return -2 * B * K / a + 2 * B * N * kappa * v / (a * a); };
}

TEST(Isothermal, InitialAccelerationSign) {
  // a'' (0) = -2 B K / a0 = -2 for the unit instance: a falls at first.
  const auto F = isothermal_accel(1, 1, 1, 3);
  EXPECT_DOUBLE_EQ(F(1.0, 0.0), -2.0);
  const ScalingFn fn = integrate_isothermal(1, 1, 1, 3, 1, 0, 0.2);
  EXPECT_LT(a_at(fn, 0.1), 1.0);
}

TEST(Isothermal, MatchesOracle) {
  const auto F = isothermal_accel(1, 1, 1, 3);
  const auto ref = oracle::rk4(F, 1, 0, 0.3);
  const ScalingFn fn = integrate_isothermal(1, 1, 1, 3, 1, 0, 0.3);
  EXPECT_NEAR(a_at(fn, 0.3), ref.a, 1e-8 * ref.a);
}

TEST(Isothermal, UnitInstanceVanishes) {
  const auto F = isothermal_accel(1, 1, 1, 3);
  const NumericScaling fn = integrate_isothermal(1, 1, 1, 3, 1, 0, 1.0);
  ASSERT_EQ(fn.status, IvpStatus::Vanished);
  const double ref = oracle::rk4_vanishing_time(F, 1, 0, 1.0, 1e-8);
  EXPECT_NEAR(*fn.vanishing_time, ref, 1e-8);
}

oracle::Accel polytropic_accel(double g, double K, double kappa, int N) {
  return [=](double a, double v) {
    return -K * g * std::pow(a, N - g * N - 1) + N * kappa * g * v * std::pow(a, N - g * N - 2);
  };
}

TEST(Polytropic, InitialDecrease) {
  const ScalingFn fn = integrate_polytropic(2, 1, 1, 1, 1, 0, 0.05);
  EXPECT_LT(a_at(fn, 0.01), 1.0);
}

TEST(Polytropic, LargeInitialVelocityKeepsGrowing) {
  const NumericScaling fn = integrate_polytropic(2, 1, 1, 1, 1, 20, 0.5);
  ASSERT_EQ(fn.status, IvpStatus::Completed);
  for (std::size_t i = 1; i < fn.t.size(); ++i) {
    EXPECT_GT(fn.a[i], fn.a[i - 1]);
    EXPECT_GT(fn.adot[i], 0.0);
  }
}

TEST(Polytropic, VanishingTimeMatchesOracle) {
  const NumericScaling fn = integrate_polytropic(2, 1, 1, 1, 1, -1, 1.0);
  ASSERT_EQ(fn.status, IvpStatus::Vanished);
  ASSERT_TRUE(fn.vanishing_time.has_value());
  const double ref = oracle::rk4_vanishing_time(polytropic_accel(2, 1, 1, 1), 1, -1, 1.0, 1e-8);
  EXPECT_NEAR(*fn.vanishing_time, ref, 1e-8);
  EXPECT_GT(*fn.vanishing_time, 0.0);
  EXPECT_EQ(vanishing_time(ScalingFn{fn}), fn.vanishing_time);
  for (double a : fn.a) EXPECT_GT(a, 1e-8);
}

TEST(Pressureless, TrivialCases) {
  const ScalingFn lin = integrate_pressureless(1, 0, 3, 2, 3, 2);
  EXPECT_NEAR(a_at(lin, 2.0), 8.0, 1e-10);
  const ScalingFn still = integrate_pressureless(1, 1, 3, 1, 0, 2);
  for (double t : {0.0, 0.5, 1.3, 2.0}) EXPECT_NEAR(a_at(still, t), 1.0, 1e-12);
}

TEST(Pressureless, ThetaTwoMatchesOracle) {
  const int N = 3;
  const double theta = 2, lambda = 1;
  const double p = N * theta - N + 2;
  const auto F = [=](double a, double v) { return -lambda * v / std::pow(a, p); };
  const auto ref = oracle::rk4(F, 1, 1, 1.0);
  const ScalingFn fn = integrate_pressureless(theta, lambda, N, 1, 1, 1.0);
  EXPECT_NEAR(a_at(fn, 1.0), ref.a, 1e-8 * ref.a);
}

TEST(NumericScaling, TimesIncreaseAndStayPositive) {
  const NumericScaling fn = integrate_polytropic(1.5, 1, 0.5, 2, 1, 0.3, 2.0);
  for (std::size_t i = 1; i < fn.t.size(); ++i) EXPECT_GT(fn.t[i], fn.t[i - 1]);
  for (double a : fn.a) EXPECT_GT(a, 0.0);
}

TEST(NumericScaling, DenseDerivativeMatchesDifferencedValue) {
  const ScalingFn fn = integrate_polytropic(2, 1, 1, 1, 1, 0.5, 0.6);
  for (double t : {0.1, 0.2345, 0.4}) {
    for (double h : {1e-3}) {
      const double fd = (a_at(fn, t + h) - a_at(fn, t - h)) / (2 * h);
      EXPECT_NEAR(evaluate(fn, t).adot, fd, 1e-5) << t;
    }
  }
}

TEST(NumericScaling, EvaluateOutsideRangeThrows) {
  const ScalingFn fn = integrate_pressureless(2, 1, 3, 1, 1, 1.0);
  EXPECT_THROW(evaluate(fn, -0.1), Error);
  EXPECT_THROW(evaluate(fn, 1.1), Error);
  EXPECT_NO_THROW(evaluate(fn, 1.0));
}

TEST(NumericScaling, RandomSweepAgreesWithOracle) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> U(0, 1);
  for (int k = 0; k < 6; ++k) {
    const double g = 1.2 + U(rng);
    const int N = 1 + static_cast<int>(rng() % 3);
    const double a1 = 0.5 + U(rng);
    const auto ref = oracle::rk4(polytropic_accel(g, 1, 0.5, N), 1, a1, 0.5);
    const ScalingFn fn = integrate_polytropic(g, 1, 0.5, N, 1, a1, 0.5);
    EXPECT_NEAR(a_at(fn, 0.5), ref.a, 1e-7 * ref.a);
  }
}

}  // namespace
}  // namespace nssol
