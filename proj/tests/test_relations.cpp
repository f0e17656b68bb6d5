#include <random>
#include <set>

#include <gtest/gtest.h>

#include "lacunary/error.hpp"
#include "lacunary/relations.hpp"
#include "oracles.hpp"

using namespace lacunary;

namespace {

IntegerSet make_set(const std::vector<std::int64_t>& values) {
  std::vector<BigInt> big;
  for (const auto v : values) big.emplace_back(v);
  return IntegerSet::from_values(std::move(big));
}

std::vector<std::int64_t> random_set(std::mt19937_64& rng, std::int64_t low, std::int64_t high,
                                     std::size_t size) {
  std::uniform_int_distribution<std::int64_t> pick(low, high);
  std::set<std::int64_t> chosen;
  while (chosen.size() < size) chosen.insert(pick(rng));
  return {chosen.begin(), chosen.end()};
}

}  // namespace

TEST(Relations, SmallCounts) {
  EXPECT_EQ(relation_count(1), 0u);
  const RelationSet z2 = enumerate_relations(2);
  EXPECT_EQ(z2.count(), 12u);
  EXPECT_EQ(z2.count(3), 6u);
  EXPECT_EQ(z2.count(4), 6u);
  EXPECT_EQ(z2.count(5), 0u);
}

TEST(Relations, MatchBruteForce) {
  for (unsigned s = 1; s <= 3; ++s) {
    const auto expected = oracle::relations(s);
    const RelationSet z = enumerate_relations(s);
    std::size_t total = 0;
    for (const auto& [m, list] : expected) {
      EXPECT_EQ(z.count(m), list.size()) << "s=" << s << " m=" << m;
      total += list.size();
    }
    EXPECT_EQ(z.count(), total);
    for (const Relation& r : z.canonical()) {
      int sum = 0;
      for (const int c : r.coefficients) sum += c;
      EXPECT_EQ(sum, 0);
      EXPECT_LE(r.weight(), static_cast<int>(2 * s));
      EXPECT_GE(r.length(), 3u);
    }
  }
}

TEST(Relations, BoundAndLimits) {
  EXPECT_GE(relation_count_bound(3), static_cast<long double>(relation_count(3)));
  EXPECT_THROW(enumerate_relations(5), PreconditionError);
  EXPECT_THROW(enumerate_relations(0), PreconditionError);
}

TEST(Relations, SymmetryClassesOfTwo) {
  const auto reps = enumerate_relations(2).up_to_symmetry();
  // (1,1,-2) and (1,1,-1,-1)
  EXPECT_EQ(reps.size(), 2u);
}

TEST(Independence, WitnessForOneTwoThree) {
  const IndependenceReport r = is_s_independent(make_set({1, 2, 3}), 2);
  ASSERT_FALSE(r.independent);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(r.witness->coefficients, (std::vector<int>{2, -1, -1}));
  EXPECT_EQ(r.witness->elements, (std::vector<BigInt>{BigInt(2), BigInt(1), BigInt(3)}));
}

TEST(Independence, PowersOfTwoAreTwoIndependent) {
  EXPECT_TRUE(is_s_independent(make_set({1, 2, 4, 8, 16, 32}), 2).independent);
  EXPECT_TRUE(is_s_independent(make_set({1, 2, 4}), 2).independent);
  // 3 * 2 = 4 + 2 * 1 has weight 6
  EXPECT_FALSE(is_s_independent(make_set({1, 2, 4}), 3).independent);
}

TEST(Independence, SidonSetsAreTwoIndependent) {
  // 2-independence excludes x + y = z + w and 2x = y + z.
  EXPECT_TRUE(is_s_independent(make_set({1, 2, 5, 11, 24}), 2).independent);
  EXPECT_FALSE(is_s_independent(make_set({1, 4, 5, 8}), 2).independent);
}

TEST(Independence, AgreesWithNaiveOracleOnSignedSets) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t size = 3 + trial % 5;
    const unsigned s = 2 + trial % 2;
    const auto values = random_set(rng, -60, 60, size);
    const bool expected = oracle::independent(values, s);
    EXPECT_EQ(is_s_independent(make_set(values), s).independent, expected)
        << "trial " << trial;
  }
}

TEST(Independence, WitnessIsAValidRelation) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto values = random_set(rng, 1, 200, 6);
    const IndependenceReport r = is_s_independent(make_set(values), 3);
    if (r.independent) continue;
    ASSERT_TRUE(r.witness.has_value());
    BigInt total = 0;
    int sum = 0;
    std::set<BigInt> distinct;
    for (std::size_t i = 0; i < r.witness->coefficients.size(); ++i) {
      total += r.witness->coefficients[i] * r.witness->elements[i];
      sum += r.witness->coefficients[i];
      distinct.insert(r.witness->elements[i]);
    }
    EXPECT_EQ(total, 0);
    EXPECT_EQ(sum, 0);
    EXPECT_EQ(distinct.size(), r.witness->elements.size());
  }
}

TEST(Independence, HugeElements) {
  std::vector<BigInt> e;
  for (int i = 0; i < 8; ++i) e.push_back(pow2(100 + 7 * i) + i);
  EXPECT_TRUE(is_s_independent(IntegerSet::from_values(e), 3).independent);
  e.push_back(e[0] + e[1] - e[2]);
  EXPECT_FALSE(is_s_independent(IntegerSet::from_values(e), 2).independent);
}

TEST(Independence, PassLayoutDoesNotChangeWitness) {
  std::mt19937_64 rng(3);
  const IntegerSet e = make_set(random_set(rng, 1, 5000, 40));
  IndependenceOptions small;
  small.max_entries_per_pass = 64;
  const IndependenceReport a = is_s_independent(e, 2);
  const IndependenceReport b = is_s_independent(e, 2, small);
  ASSERT_EQ(a.independent, b.independent);
  if (!a.independent) {
    EXPECT_EQ(a.witness->coefficients, b.witness->coefficients);
    EXPECT_EQ(a.witness->elements, b.witness->elements);
  }
}

TEST(Representations, MomentOfZeroOneThree) {
  const RepresentationCounts r = count_representations(make_set({0, 1, 3}), 2);
  EXPECT_EQ(r.moment, BigInt(15));
  EXPECT_EQ(r.counts.at(4), 2u);
}

TEST(Representations, MatchesBruteForce) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const auto values = random_set(rng, 0, 300, 12);
    const RepresentationCounts r = count_representations(make_set(values), 2);
    EXPECT_EQ(r.moment, BigInt(oracle::second_moment(values)));
  }
  EXPECT_THROW(count_representations(make_set({-1, 2}), 2), PreconditionError);
}

TEST(DependenceBound, Formula) {
  EXPECT_DOUBLE_EQ(dependence_probability_bound(2, 2, 4096), 12.0 * 16 / 4096);
  EXPECT_GT(dependence_probability_bound(2, 10, 100), 1.0);
}
