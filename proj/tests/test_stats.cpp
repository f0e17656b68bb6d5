#include <cmath>

#include <gtest/gtest.h>

#include "lacunary/bernstein.hpp"
#include "lacunary/error.hpp"
#include "lacunary/stats.hpp"

using namespace lacunary;

TEST(Stats, NormalQuantile) {
  EXPECT_NEAR(normal_quantile(0.95), 1.959964, 1e-6);
  EXPECT_NEAR(normal_quantile(0.99), 2.575829, 1e-6);
  EXPECT_THROW(normal_quantile(1.0), PreconditionError);
}

TEST(Stats, WilsonInterval) {
  const Interval i = wilson_interval(0, 100, 0.95);
  EXPECT_EQ(i.low, 0.0);
  EXPECT_NEAR(i.high, 0.037, 1e-3);
  const Interval all = wilson_interval(0, 0);
  EXPECT_EQ(all.low, 0.0);
  EXPECT_EQ(all.high, 1.0);
  const Interval mid = wilson_interval(50, 100, 0.95);
  EXPECT_NEAR(mid.low, 0.4038, 1e-4);
  EXPECT_NEAR(mid.high, 0.5962, 1e-4);
}

TEST(Bernstein, BoundFormula) {
  EXPECT_DOUBLE_EQ(bernstein_bound(100, 60), 4 * std::exp(-3600.0 / 640.0));
  EXPECT_THROW(bernstein_bound(1, 0), PreconditionError);
  EXPECT_THROW(bernstein_bound(-1, 1), PreconditionError);
}

TEST(Bernstein, DistributionNames) {
  for (const auto kind : {BernsteinDistribution::rademacher, BernsteinDistribution::centered_selector,
                          BernsteinDistribution::uniform, BernsteinDistribution::unit_phase}) {
    EXPECT_EQ(bernstein_distribution_from_string(to_string(kind)), kind);
  }
  EXPECT_THROW(bernstein_distribution_from_string("cauchy"), ParseError);
}

TEST(Bernstein, VarianceOfEachKind) {
  BernsteinSpec s;
  EXPECT_DOUBLE_EQ(s.variance(), 1.0);
  s.kind = BernsteinDistribution::centered_selector;
  s.delta = 0.1;
  EXPECT_NEAR(s.variance(), 0.09, 1e-15);
  s.kind = BernsteinDistribution::uniform;
  EXPECT_NEAR(s.variance(), 1.0 / 3, 1e-15);
  s.kind = BernsteinDistribution::unit_phase;
  s.amplitude = 0.5;
  EXPECT_NEAR(s.variance(), 0.25, 1e-15);
}

TEST(Bernstein, EmpiricalTailBelowBound) {
  const double a[] = {10, 20, 30};
  for (const auto kind : {BernsteinDistribution::rademacher, BernsteinDistribution::uniform,
                          BernsteinDistribution::unit_phase}) {
    BernsteinSpec spec;
    spec.kind = kind;
    const BernsteinReport r = monte_carlo_bernstein(64, spec, a, 5000, 3, 1);
    for (const auto& cell : r.cells) EXPECT_TRUE(cell.within_bound) << to_string(kind);
  }
}

TEST(Bernstein, ThreadsDoNotChangeCounts) {
  const double a[] = {5, 15};
  const BernsteinReport x = monte_carlo_bernstein(50, BernsteinSpec{}, a, 2000, 8, 1);
  const BernsteinReport y = monte_carlo_bernstein(50, BernsteinSpec{}, a, 2000, 8, 4);
  for (std::size_t i = 0; i < 2; ++i) EXPECT_EQ(x.cells[i].exceed, y.cells[i].exceed);
}

TEST(Bernstein, RejectsOversizedVariables) {
  BernsteinSpec spec;
  spec.amplitude = 1.5;
  const double a[] = {1};
  EXPECT_THROW(monte_carlo_bernstein(10, spec, a, 10, 1), PreconditionError);
}
