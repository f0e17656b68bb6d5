#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lacunary/bigint.hpp"
#include "lacunary/integer_set.hpp"

namespace lacunary {

enum class PartitionKind { dyadic, gross, custom };

std::string to_string(PartitionKind kind);
PartitionKind partition_kind_from_string(const std::string& name);

struct GrossOptions {
  /// log p_k / log p_{k-1} must exceed this for k >= tail_start.
  double ratio_threshold = 1.5;
  std::size_t tail_start = 2;
};

/// Annular partition of Z from cut points 0 < p_0 < p_1 < ... < p_K:
///   block 0 = [-p_0, p_0],  block k = [-p_k, -p_{k-1}) ∪ (p_{k-1}, p_k].
class Partition {
 public:
  Partition(std::vector<BigInt> cut_points, PartitionKind kind);

  const std::vector<BigInt>& cut_points() const { return cuts_; }
  PartitionKind kind() const { return kind_; }
  std::size_t block_count() const { return cuts_.size(); }
  std::size_t last_block() const { return cuts_.size() - 1; }

  /// |I_k|: 2 p_0 + 1 for k = 0, 2 (p_k - p_{k-1}) otherwise.
  BigInt interval_size(std::size_t k) const;

  /// Block index containing n, or nullopt when |n| > p_K.
  std::optional<std::size_t> block_of(const BigInt& n) const;

 private:
  std::vector<BigInt> cuts_;
  PartitionKind kind_;
};

/// p_k = 2^k for k = 0..k_max.
Partition dyadic_partition(std::size_t k_max);

/// p_0 = 1, p_k = 2^{k!} for k = 1..k_max.
Partition gross_partition(std::size_t k_max);

/// p_0 = 1, p_k = 2^{e_k} for the given exponents e_1 < e_2 < ...; the ratios
/// e_k / e_{k-1} must be nondecreasing and above the threshold on the tail.
Partition gross_partition_from_exponents(const std::vector<std::uint64_t>& exponents,
                                         const GrossOptions& options = {});

/// Throws PreconditionError unless log p_k / log p_{k-1} is nondecreasing
/// and above the threshold for k >= tail_start.
void check_gross_ratios(const std::vector<BigInt>& cut_points, const GrossOptions& options);

struct Block {
  std::size_t k = 0;
  /// Block k holds inner < |n| <= outer; block 0 holds |n| <= outer.
  BigInt inner;
  BigInt outer;
  BigInt interval_size;
  /// Range [begin, end) of the block inside the source set's index space.
  std::size_t begin = 0;
  std::size_t end = 0;
  IntegerSet elements;

  std::size_t count() const { return end - begin; }
};

struct BlockDecomposition {
  Partition partition;
  IntegerSet source;
  std::vector<Block> blocks;
  /// Elements beyond p_K.
  IntegerSet remainder;

  /// E ∩ [-p_K, p_K], which is a prefix of the source set.
  IntegerSet covered() const;
  std::size_t covered_count() const;
};

BlockDecomposition decompose(const IntegerSet& set, const Partition& partition);

struct BlockGrowthEntry {
  std::size_t k = 0;
  std::size_t count = 0;
  BigInt interval_size;
  /// log|E_k| / log|I_k|; empty when E_k is empty.
  std::optional<double> ratio;
};

struct BlockGrowthReport {
  std::vector<BlockGrowthEntry> entries;
  std::size_t tail_start = 0;
  std::optional<double> min_tail_ratio;
  std::size_t empty_tail_blocks = 0;
};

BlockGrowthReport verify_block_growth(const BlockDecomposition& decomposition,
                                      std::size_t tail_start);

}  // namespace lacunary
