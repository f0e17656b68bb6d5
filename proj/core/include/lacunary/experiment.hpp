#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "lacunary/equidistribution.hpp"
#include "lacunary/error.hpp"
#include "lacunary/integer_set.hpp"
#include "lacunary/partition.hpp"
#include "lacunary/selection.hpp"
#include "lacunary/serialize.hpp"

namespace lacunary {

const char* version();

inline constexpr int kConfigSchema = 1;

struct SourceSpec {
  /// primes | polynomial | range | geometric
  std::string kind = "primes";
  /// primes: largest candidate; range: upper end.
  std::uint64_t limit = std::uint64_t{1} << 20;
  /// range: lower end.
  std::int64_t low = 1;
  /// polynomial: ascending coefficients.
  std::vector<BigInt> coefficients;
  /// polynomial, geometric: number of terms.
  std::uint64_t k_max = 0;
  BigInt base = 3;
};

struct PartitionSpec {
  /// dyadic | gross
  std::string kind = "dyadic";
  /// 0 picks the smallest dyadic k_max covering the source; gross defaults to 4.
  std::size_t k_max = 0;
  /// gross only: custom exponents e_k with p_k = 2^{e_k}; empty means k!.
  std::vector<std::uint64_t> exponents;
};

struct ScheduleSpec {
  /// linear (ell_k = k) | katznelson_li | full | zero | explicit
  std::string kind = "linear";
  /// linear: replace ell_k by min(ell_k, |E_k|) instead of failing.
  bool cap = false;
  /// explicit: one ell per block, block 0 first.
  std::vector<std::uint64_t> ell;
};

struct ExperimentConfig {
  int schema = kConfigSchema;
  /// theorem_4_8 | main_theorem
  std::string pipeline = "main_theorem";
  SourceSpec source;
  PartitionSpec partition;
  ScheduleSpec schedule;
  std::vector<unsigned> s{2};
  std::uint64_t trials = 100;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  std::size_t tail_start = 12;
  /// Required frequency of s-independent tail blocks.
  double independence_threshold = 0.95;
  /// Required frequency of psi(K) < psi(ceil(K/4)).
  double psi_threshold = 0.90;
  double confidence = 0.99;
  std::uint64_t max_grid = std::uint64_t{1} << 24;
  ScanOptions scan;
  /// Empty: LACUNARY_OUT_DIR, then the working directory.
  std::string output_dir;
};

Json to_json(const ExperimentConfig& config);
/// Unknown keys and schema mismatches are ParseErrors; missing keys keep
/// their defaults. Accepts a full experiment record and reads its config.
ExperimentConfig config_from_json(const Json& json);

/// FNV-1a 64 of the canonical config dump without threads and output_dir,
/// as 16 hex digits.
std::string config_hash(const ExperimentConfig& config);

IntegerSet build_source(const SourceSpec& spec);
Partition build_partition(const PartitionSpec& spec, const IntegerSet& source);
/// ell per block according to the spec; throws when ell_k > |E_k| unless
/// capping is requested.
std::vector<std::uint64_t> build_ell(const ScheduleSpec& spec,
                                     const BlockDecomposition& decomposition);

/// A precondition failure that carries a report explaining it.
class DetailedPreconditionError : public PreconditionError {
 public:
  DetailedPreconditionError(const std::string& what, Json details)
      : PreconditionError(what), details_(std::move(details)) {}
  const Json& details() const { return details_; }

 private:
  Json details_;
};

/// UTC time as 2024-01-31T12:00:00Z.
std::string utc_timestamp();

/// Resolves the output directory: explicit value, LACUNARY_OUT_DIR, or ".".
std::filesystem::path output_directory(const std::string& requested);

/// Creates dir/<stem>-NNNN<extension> for the first unused NNNN and writes
/// contents. Existing files are never replaced.
std::filesystem::path write_new_file(const std::filesystem::path& dir, const std::string& stem,
                                     const std::string& extension, const std::string& contents);

/// Removes the "timestamps" member so records can be compared across runs.
Json strip_timestamps(Json record);

}  // namespace lacunary
