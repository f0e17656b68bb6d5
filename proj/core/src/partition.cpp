#include "lacunary/partition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lacunary/error.hpp"

namespace lacunary {

std::string to_string(PartitionKind kind) {
  switch (kind) {
    case PartitionKind::dyadic:
      return "dyadic";
    case PartitionKind::gross:
      return "gross";
    case PartitionKind::custom:
      return "custom";
  }
  return "custom";
}

PartitionKind partition_kind_from_string(const std::string& name) {
  if (name == "dyadic") return PartitionKind::dyadic;
  if (name == "gross") return PartitionKind::gross;
  if (name == "custom") return PartitionKind::custom;
  throw ParseError("unknown partition kind '" + name + "'");
}

Partition::Partition(std::vector<BigInt> cut_points, PartitionKind kind)
    : cuts_(std::move(cut_points)), kind_(kind) {
  if (cuts_.empty()) {
    throw PreconditionError("Partition: need at least one cut point");
  }
  if (cuts_.front() <= 0) {
    throw PreconditionError("Partition: cut points must be positive");
  }
  for (std::size_t i = 1; i < cuts_.size(); ++i) {
    if (cuts_[i] <= cuts_[i - 1]) {
      throw PreconditionError("Partition: cut points must be strictly increasing");
    }
  }
  if (kind_ == PartitionKind::dyadic) {
    for (std::size_t k = 0; k < cuts_.size(); ++k) {
      if (cuts_[k] != pow2(k)) {
        throw PreconditionError("Partition: dyadic cut points must be p_k = 2^k");
      }
    }
  }
}

BigInt Partition::interval_size(std::size_t k) const {
  if (k >= cuts_.size()) {
    throw PreconditionError("Partition::interval_size: no such block");
  }
  if (k == 0) {
    return 2 * cuts_[0] + 1;
  }
  return 2 * (cuts_[k] - cuts_[k - 1]);
}

std::optional<std::size_t> Partition::block_of(const BigInt& n) const {
  const BigInt magnitude = abs(n);
  const auto it = std::lower_bound(cuts_.begin(), cuts_.end(), magnitude);
  if (it == cuts_.end()) {
    return std::nullopt;
  }
  return static_cast<std::size_t>(it - cuts_.begin());
}

Partition dyadic_partition(std::size_t k_max) {
  if (k_max == 0) {
    throw PreconditionError("dyadic_partition: k_max must be >= 1");
  }
  std::vector<BigInt> cuts;
  cuts.reserve(k_max + 1);
  for (std::size_t k = 0; k <= k_max; ++k) {
    cuts.push_back(pow2(k));
  }
  return Partition(std::move(cuts), PartitionKind::dyadic);
}

Partition gross_partition(std::size_t k_max) {
  if (k_max == 0) {
    throw PreconditionError("gross_partition: k_max must be >= 1");
  }
  if (k_max > 12) {
    // 13! bits is already ~6 GB of cut point.
    throw PreconditionError("gross_partition: factorial schedule beyond k = 12 does not fit");
  }
  std::vector<std::uint64_t> exponents;
  std::uint64_t factorial = 1;
  for (std::size_t k = 1; k <= k_max; ++k) {
    factorial *= k;
    exponents.push_back(factorial);
  }
  return gross_partition_from_exponents(exponents);
}

void check_gross_ratios(const std::vector<BigInt>& cut_points, const GrossOptions& options) {
  double previous = 0.0;
  for (std::size_t k = std::max<std::size_t>(options.tail_start, 2); k < cut_points.size(); ++k) {
    const double ratio =
        static_cast<double>(log_abs(cut_points[k]) / log_abs(cut_points[k - 1]));
    if (!(ratio > options.ratio_threshold)) {
      throw PreconditionError("gross partition: log p_" + std::to_string(k) + " / log p_" +
                              std::to_string(k - 1) + " = " + std::to_string(ratio) +
                              " does not exceed the threshold " +
                              std::to_string(options.ratio_threshold));
    }
    if (ratio < previous) {
      throw PreconditionError("gross partition: ratio log p_k / log p_{k-1} decreases at k = " +
                              std::to_string(k));
    }
    previous = ratio;
  }
}

Partition gross_partition_from_exponents(const std::vector<std::uint64_t>& exponents,
                                         const GrossOptions& options) {
  if (exponents.empty()) {
    throw PreconditionError("gross partition: need at least one exponent");
  }
  std::vector<BigInt> cuts;
  cuts.reserve(exponents.size() + 1);
  cuts.emplace_back(1);
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    if (exponents[i] == 0 || (i > 0 && exponents[i] <= exponents[i - 1])) {
      throw PreconditionError("gross partition: exponents must be positive and strictly increasing");
    }
    cuts.push_back(pow2(exponents[i]));
  }
  check_gross_ratios(cuts, options);
  return Partition(std::move(cuts), PartitionKind::gross);
}

IntegerSet BlockDecomposition::covered() const {
  return source.prefix(covered_count(), source.label());
}

std::size_t BlockDecomposition::covered_count() const {
  return blocks.empty() ? 0 : blocks.back().end;
}

BlockDecomposition decompose(const IntegerSet& set, const Partition& partition) {
  BlockDecomposition result{partition, set, {}, {}};
  const auto& cuts = partition.cut_points();
  const auto& elems = set.elements();
  std::size_t pos = 0;
  result.blocks.reserve(cuts.size());
  for (std::size_t k = 0; k < cuts.size(); ++k) {
    Block block;
    block.k = k;
    block.inner = k == 0 ? BigInt(0) : cuts[k - 1];
    block.outer = cuts[k];
    block.interval_size = partition.interval_size(k);
    block.begin = pos;
    while (pos < elems.size() && abs(elems[pos]) <= cuts[k]) {
      ++pos;
    }
    block.end = pos;
    std::vector<std::size_t> indices(block.count());
    for (std::size_t i = 0; i < indices.size(); ++i) {
      indices[i] = block.begin + i;
    }
    block.elements = set.subset(indices, set.label() + "#" + std::to_string(k));
    result.blocks.push_back(std::move(block));
  }
  std::vector<std::size_t> rest(elems.size() - pos);
  for (std::size_t i = 0; i < rest.size(); ++i) {
    rest[i] = pos + i;
  }
  result.remainder = set.subset(rest, set.label() + "#remainder");
  return result;
}

BlockGrowthReport verify_block_growth(const BlockDecomposition& decomposition,
                                      std::size_t tail_start) {
  BlockGrowthReport report;
  report.tail_start = tail_start;
  for (const Block& block : decomposition.blocks) {
    BlockGrowthEntry entry;
    entry.k = block.k;
    entry.count = block.count();
    entry.interval_size = block.interval_size;
    if (entry.count > 0) {
      entry.ratio = static_cast<double>(std::log(static_cast<long double>(entry.count)) /
                                        log_abs(block.interval_size));
    }
    if (block.k >= tail_start) {
      if (!entry.ratio) {
        ++report.empty_tail_blocks;
      } else if (!report.min_tail_ratio || *entry.ratio < *report.min_tail_ratio) {
        report.min_tail_ratio = entry.ratio;
      }
    }
    report.entries.push_back(std::move(entry));
  }
  return report;
}

}  // namespace lacunary
