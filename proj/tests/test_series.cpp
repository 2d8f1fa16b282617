#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "multient/error.hpp"
#include "multient/series.hpp"

namespace multient {
namespace {

TEST(Grid, EndpointsAndSpacing) {
  const auto g = make_grid(0.9, 3.0, 0.005);
  ASSERT_EQ(g.size(), 421u);
  EXPECT_DOUBLE_EQ(g.front(), 0.9);
  EXPECT_NEAR(g.back(), 3.0, 1e-12);
  for (std::size_t i = 1; i < g.size(); ++i) EXPECT_GT(g[i], g[i - 1]);
  EXPECT_EQ(make_grid(1.0, 1.0, 0.1).size(), 1u);
  EXPECT_THROW(make_grid(0.0, 1.0, 0.0), ConfigError);
  EXPECT_THROW(make_grid(1.0, 0.0, 0.1), ConfigError);
}

TEST(FiniteDifference, ExactOnQuadraticsInside) {
  const auto g = make_grid(0.0, 2.0, 0.01);
  std::vector<double> v;
  for (double x : g) v.push_back(x * x);
  const auto d = finite_difference(g, v);
  for (std::size_t i = 1; i + 1 < g.size(); ++i) EXPECT_NEAR(d[i], 2 * g[i], 1e-10);
  EXPECT_NEAR(d.front(), 0.01, 1e-10);
}

TEST(Detector, StepAndKink) {
  const auto g = make_grid(0.0, 3.0, 0.01);
  std::vector<double> step, kink, smooth;
  for (double x : g) {
    step.push_back(x < 1.504 ? 0.2 : 0.35);
    kink.push_back(std::max(0.0, x - 2.0));
    smooth.push_back(std::sin(x));
  }
  auto s = detect_discontinuities(g, step);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_NEAR(s[0], 1.5, 0.015);
  auto k = detect_discontinuities(g, kink);
  ASSERT_EQ(k.size(), 1u);
  EXPECT_NEAR(k[0], 2.0, 0.015);
  EXPECT_TRUE(detect_discontinuities(g, smooth).empty());
}

TEST(Detector, StepBetweenPointsFlagsLaterPoint) {
  const auto g = make_grid(0.9, 1.3, 0.005);
  for (double wiggle : {0.0, 1e-13, -1e-13}) {
    std::vector<double> v;
    for (double x : g) v.push_back(x < 1.0824 ? 0.316665 : 0.465683);
    v[36] += wiggle;  // grid point 1.08, just below the step
    const auto flags = detect_discontinuities(g, v);
    ASSERT_EQ(flags.size(), 1u);
    EXPECT_DOUBLE_EQ(flags[0], g[37]) << wiggle;
  }
}

TEST(Detector, FlatWithRoundingNoiseIsQuiet) {
  const auto g = make_grid(0.0, 1.0, 0.01);
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> noise(-1e-15, 1e-15);
  std::vector<double> v;
  for (std::size_t i = 0; i < g.size(); ++i) v.push_back((i < 50 ? 0.3 : 0.4) + noise(rng));
  const auto flags = detect_discontinuities(g, v);
  ASSERT_EQ(flags.size(), 1u);
  EXPECT_NEAR(flags[0], 0.5, 0.02);
}

TEST(Detector, SkipsNaNsAndNeedsFivePoints) {
  const auto g = make_grid(0.0, 1.0, 0.01);
  std::vector<double> v;
  for (double x : g) v.push_back(x < 0.5 ? 0.1 : 0.2);
  v[20] = std::numeric_limits<double>::quiet_NaN();
  const auto flags = detect_discontinuities(g, v);
  ASSERT_EQ(flags.size(), 1u);
  EXPECT_NEAR(flags[0], 0.5, 0.02);
  const std::vector<double> few{0, 1, 2, 3};
  EXPECT_THROW(detect_discontinuities(few, few), ConfigError);
}

TEST(SweepSeries, Flagged) {
  SweepSeries s;
  s.grid = make_grid(0.0, 2.0, 0.01);
  for (double x : s.grid) s.values.push_back(x < 1.0 ? 0.0 : 1.0);
  analyse(s);
  ASSERT_EQ(s.discontinuities.size(), 1u);
  EXPECT_TRUE(s.flagged(s.discontinuities[0]));
  EXPECT_FALSE(s.flagged(0.5));
  EXPECT_EQ(s.derivative.size(), s.values.size());
}

TEST(PowerLaw, RecoversSyntheticExponents) {
  for (double p : {1.787, 3.4, 0.5, 2.0}) {
    std::vector<ScalingPoint> pts;
    for (double N : {8.0, 10.0, 12.0, 14.0}) pts.push_back({N, 1.0 + 5.0 * std::pow(N, -p)});
    const ScalingFit fit = fit_power_law(pts);
    EXPECT_NEAR(fit.exponent, p, 1e-10);
    EXPECT_NEAR(fit.prefactor, 5.0, 1e-8);
    EXPECT_NEAR(fit.r_squared, 1.0, 1e-12);
  }
}

TEST(PowerLaw, QuotedPointsAndOrderInvariance) {
  std::vector<ScalingPoint> pts{{8, 2.6}, {10, 1.7}, {12, 1.4}};
  const ScalingFit a = fit_power_law(pts);
  EXPECT_NEAR(a.exponent, 3.429539348, 1e-8);
  EXPECT_NEAR(a.r_squared, 0.99722, 1e-5);
  std::reverse(pts.begin(), pts.end());
  const ScalingFit b = fit_power_law(pts);
  EXPECT_EQ(a.exponent, b.exponent);
  EXPECT_EQ(a.prefactor, b.prefactor);
}

TEST(PowerLaw, Preconditions) {
  EXPECT_THROW(fit_power_law({{8, 2.0}, {10, 1.5}}), ConfigError);
  EXPECT_THROW(fit_power_law({{8, 2.0}, {10, 1.5}, {12, 1.0}}), ConfigError);
  EXPECT_THROW(fit_power_law({{8, 2.0}, {8, 1.5}, {8, 1.2}}), ConfigError);
}

}  // namespace
}  // namespace multient
