#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "lacunary/circle.hpp"
#include "lacunary/error.hpp"
#include "lacunary/grid.hpp"
#include "oracles.hpp"

using namespace lacunary;

TEST(CirclePoint, RationalReduces) {
  const CirclePoint p = CirclePoint::rational(-6, 8);
  EXPECT_TRUE(p.is_rational());
  EXPECT_EQ(p.numerator(), 1u);
  EXPECT_EQ(p.denominator(), 4u);
  EXPECT_EQ(p.describe(), "1/4");
  EXPECT_THROW(CirclePoint::rational(1, 0), PreconditionError);
  EXPECT_NEAR(static_cast<double>(CirclePoint::turns(-0.25L).theta()), 0.75, 1e-15);
}

TEST(CirclePoint, DistanceToRationals) {
  EXPECT_NEAR(static_cast<double>(distance_to_rationals(0.26L, 4)), 0.01, 1e-12);
  EXPECT_NEAR(static_cast<double>(distance_to_rationals(0.5L, 2)), 0.0, 1e-15);
}

TEST(Phase, QuarterTurnsAreExact) {
  const PhaseEvaluator e(CirclePoint::rational(1, 4));
  EXPECT_EQ(e(std::int64_t{1}), std::complex<long double>(0, 1));
  EXPECT_EQ(e(std::int64_t{2}), std::complex<long double>(-1, 0));
  EXPECT_EQ(e(std::int64_t{-1}), std::complex<long double>(0, -1));
  EXPECT_EQ(e(pow2(200) + 3), std::complex<long double>(0, -1));
}

TEST(Phase, IrrationalMatchesLongDouble) {
  const long double x = std::numbers::sqrt2_v<long double> - 1;
  const PhaseEvaluator e(CirclePoint::turns(x));
  for (std::int64_t n : {1LL, 7LL, 12345LL, 99999LL * 99999LL}) {
    const long double angle = 2 * std::numbers::pi_v<long double> * std::fmod(n * x, 1.0L);
    const auto v = e(n);
    EXPECT_NEAR(static_cast<double>(v.real()), static_cast<double>(std::cos(angle)), 1e-9);
    EXPECT_NEAR(static_cast<double>(v.imag()), static_cast<double>(std::sin(angle)), 1e-9);
  }
}

TEST(Phase, BigIntMatchesInt64Path) {
  const PhaseEvaluator e(CirclePoint::turns(0.123456789L));
  for (std::int64_t n : {3LL, 1000003LL, -77LL}) {
    const auto a = e(n);
    const auto b = e(BigInt(n));
    EXPECT_NEAR(static_cast<double>(std::abs(a - b)), 0.0, 1e-15);
  }
}

TEST(Weyl, MeansMatchDirectSum) {
  const IntegerSet e = generate_primes(5000);
  std::vector<std::int64_t> values;
  for (const BigInt& n : e.elements()) values.push_back(static_cast<std::int64_t>(n));
  const std::vector<CirclePoint> points{CirclePoint::turns(0.3183098861837907L),
                                        CirclePoint::rational(2, 7)};
  const WeylReport r = weyl_means(e, 500, points, 2);
  ASSERT_EQ(r.values.size(), 2u);
  const auto direct = oracle::weyl_mean(values, 500, 0.3183098861837907L);
  EXPECT_NEAR(static_cast<double>(std::abs(std::complex<long double>(r.values[0].mean) - direct)),
              0.0, 1e-9);
  EXPECT_THROW(weyl_means(e, 0, points), PreconditionError);
  EXPECT_THROW(weyl_means(e, e.size() + 1, points), PreconditionError);
}

TEST(Weyl, RunningSums) {
  std::vector<BigInt> evens;
  for (int n = 1; n <= 100; ++n) evens.emplace_back(2 * n);
  const IntegerSet e = IntegerSet::from_sorted(evens);
  const std::size_t ks[] = {1, 50, 100};
  const auto sums = weyl_sums(e, ks, CirclePoint::rational(1, 2));
  EXPECT_EQ(sums[0], std::complex<long double>(1, 0));
  EXPECT_EQ(sums[2], std::complex<long double>(100, 0));
}

TEST(Grid, FftMatchesDirectEvaluation) {
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<std::int64_t> freq(-300, 300);
  std::vector<std::int64_t> f;
  std::vector<double> c;
  SparsePolynomial p;
  for (int i = 0; i < 40; ++i) {
    f.push_back(freq(rng));
    c.push_back((rng() & 1) ? 1.0 : -0.5);
    p.add(BigInt(f.back()), c.back());
  }
  for (const std::uint64_t grid : {64ULL, 1200ULL, 4096ULL}) {
    const auto fast = evaluate_on_grid(p, grid);
    const auto slow = oracle::evaluate(f, c, grid);
    ASSERT_EQ(fast.size(), slow.size());
    for (std::size_t j = 0; j < grid; ++j) EXPECT_NEAR(std::abs(fast[j] - slow[j]), 0.0, 1e-9);
  }
}

TEST(Grid, SupNormCertificate) {
  SparsePolynomial p;
  p.add(BigInt(1), 1.0);
  p.add(BigInt(100), -1.0);
  const GridSupNorm s = sup_norm_via_grid(p);
  EXPECT_EQ(s.required_grid, BigInt(400));
  EXPECT_EQ(s.grid_size, 400u);
  EXPECT_FALSE(s.capped);
  ASSERT_TRUE(s.certified_bound.has_value());
  EXPECT_DOUBLE_EQ(*s.certified_bound, 5 * s.coarse_sup);
  EXPECT_LE(s.coarse_sup, 2.0 + 1e-12);
}

TEST(Grid, CappedGridHasNoCertificate) {
  SparsePolynomial p;
  p.add(pow2(40), 1.0);
  GridOptions options;
  options.max_grid = 1024;
  const GridSupNorm s = sup_norm_via_grid(p, options);
  EXPECT_TRUE(s.capped);
  EXPECT_EQ(s.grid_size, 1024u);
  EXPECT_FALSE(s.certified_bound.has_value());
}

TEST(Grid, ZeroPolynomial) {
  SparsePolynomial p;
  p.add(BigInt(5), 0.0);
  EXPECT_TRUE(p.is_zero());
  const GridSupNorm s = sup_norm_via_grid(p);
  EXPECT_EQ(s.coarse_sup, 0.0);
  EXPECT_EQ(s.certified_bound.value(), 0.0);
}

TEST(Grid, SmoothSizes) {
  EXPECT_EQ(next_smooth_size(1), 1u);
  EXPECT_EQ(next_smooth_size(11), 12u);
  EXPECT_EQ(next_smooth_size(1025), 1029u);
  EXPECT_THROW(sup_norm_via_grid(SparsePolynomial{}, GridOptions{.multiplier = 2}),
               PreconditionError);
}
