#include <gtest/gtest.h>

#include "lacunary/error.hpp"
#include "lacunary/partition.hpp"

using namespace lacunary;

TEST(Partition, DyadicCuts) {
  const Partition p = dyadic_partition(4);
  ASSERT_EQ(p.block_count(), 5u);
  EXPECT_EQ(p.cut_points().back(), BigInt(16));
  EXPECT_EQ(p.interval_size(0), BigInt(3));
  EXPECT_EQ(p.interval_size(3), BigInt(8));
  EXPECT_EQ(p.block_of(BigInt(0)).value(), 0u);
  EXPECT_EQ(p.block_of(BigInt(-1)).value(), 0u);
  EXPECT_EQ(p.block_of(BigInt(2)).value(), 1u);
  EXPECT_EQ(p.block_of(BigInt(-3)).value(), 2u);
  EXPECT_EQ(p.block_of(BigInt(16)).value(), 4u);
  EXPECT_FALSE(p.block_of(BigInt(17)).has_value());
}

TEST(Partition, GrossCuts) {
  const Partition p = gross_partition(4);
  ASSERT_EQ(p.block_count(), 5u);
  EXPECT_EQ(p.cut_points()[0], BigInt(1));
  EXPECT_EQ(p.cut_points()[1], BigInt(2));
  EXPECT_EQ(p.cut_points()[2], BigInt(4));
  EXPECT_EQ(p.cut_points()[3], BigInt(64));
  EXPECT_EQ(p.cut_points()[4], pow2(24));
}

TEST(Partition, GrossCustomExponentsChecked) {
  EXPECT_NO_THROW(gross_partition_from_exponents({1, 2, 4, 8, 16}));
  // ratio 1.25 on the tail
  EXPECT_THROW(gross_partition_from_exponents({1, 4, 5}), PreconditionError);
  // not increasing
  EXPECT_THROW(gross_partition_from_exponents({2, 2}), PreconditionError);
}

TEST(Decompose, BlocksCoverTheSetInOrder) {
  const IntegerSet e = generate_primes(1000);
  const BlockDecomposition d = decompose(e, dyadic_partition(10));
  std::size_t total = 0;
  std::size_t next = 0;
  for (const Block& b : d.blocks) {
    EXPECT_EQ(b.begin, next);
    next = b.end;
    total += b.count();
    for (const BigInt& n : b.elements.elements()) {
      EXPECT_EQ(d.partition.block_of(n).value(), b.k);
    }
  }
  EXPECT_EQ(total, e.size());
  EXPECT_TRUE(d.remainder.empty());
  EXPECT_EQ(d.covered().size(), e.size());
}

TEST(Decompose, RemainderBeyondLastCut) {
  const IntegerSet e = generate_primes(100);
  const BlockDecomposition d = decompose(e, dyadic_partition(4));
  EXPECT_EQ(d.covered_count(), 6u);  // 2 3 5 7 11 13
  EXPECT_EQ(d.remainder.size(), e.size() - 6);
}

TEST(Decompose, NegativeElementsLandInAnnuli) {
  const IntegerSet e = IntegerSet::from_values({BigInt(-3), BigInt(3), BigInt(1), BigInt(-6)});
  const BlockDecomposition d = decompose(e, dyadic_partition(3));
  EXPECT_EQ(d.blocks[0].count(), 1u);
  EXPECT_EQ(d.blocks[2].count(), 2u);
  EXPECT_EQ(d.blocks[3].count(), 1u);
}

TEST(BlockGrowth, PrimesHaveGrowingBlocks) {
  const BlockDecomposition d = decompose(generate_primes(1 << 16), dyadic_partition(16));
  const BlockGrowthReport r = verify_block_growth(d, 8);
  ASSERT_TRUE(r.min_tail_ratio.has_value());
  EXPECT_GT(*r.min_tail_ratio, 0.5);
  EXPECT_EQ(r.empty_tail_blocks, 0u);
  EXPECT_FALSE(r.entries[0].ratio.has_value());
}
