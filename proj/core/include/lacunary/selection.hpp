#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "lacunary/integer_set.hpp"
#include "lacunary/partition.hpp"
#include "lacunary/stats.hpp"

namespace lacunary {

struct Fraction {
  std::uint64_t num = 0;
  std::uint64_t den = 1;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Fraction&, const Fraction&) = default;
};

/// One block of a blockwise schedule: delta = ell / size on E_k.
struct ScheduleBlock {
  std::size_t k = 0;
  std::uint64_t ell = 0;
  std::uint64_t size = 0;
  double delta = 0.0;
  std::size_t begin = 0;
  std::size_t end = 0;
};

/// Selection probabilities delta_n aligned with the elements of a source set,
/// plus the partial sums sigma_k = delta_{n_1} + ... + delta_{n_k}.
class DensitySchedule {
 public:
  DensitySchedule(IntegerSet source, std::vector<double> densities,
                  std::vector<Fraction> exact = {}, std::vector<ScheduleBlock> blocks = {});

  /// delta_n = density for every element.
  static DensitySchedule constant(IntegerSet source, double density);
  /// delta_n = ell / |E| for every element, kept as an exact fraction.
  static DensitySchedule uniform(IntegerSet source, std::uint64_t ell);

  const IntegerSet& source() const { return source_; }
  std::size_t size() const { return densities_.size(); }
  std::span<const double> densities() const { return densities_; }
  double density(std::size_t i) const { return densities_[i]; }
  /// Exact value of delta_{n_i} when the constructor knew it as a fraction.
  std::optional<Fraction> exact_density(std::size_t i) const;
  bool has_exact() const { return !exact_.empty(); }
  const std::vector<ScheduleBlock>& blocks() const { return blocks_; }
  bool blockwise() const { return !blocks_.empty(); }

  /// sigma_k for k = 1..size(); sigma(0) = 0.
  double sigma(std::size_t k) const { return k == 0 ? 0.0 : sigma_[k - 1]; }
  std::span<const double> sigma() const { return sigma_; }
  bool nonincreasing() const;

  /// Left-to-right long double accumulation, rounded to double per entry.
  static std::vector<double> partial_sums(std::span<const double> densities);

 private:
  IntegerSet source_;
  std::vector<double> densities_;
  std::vector<Fraction> exact_;
  std::vector<ScheduleBlock> blocks_;
  std::vector<double> sigma_;
};

struct SelectionTrial {
  std::uint64_t seed = 0;
  /// Indices into the source set of the selected elements, increasing.
  std::vector<std::size_t> indices;
  IntegerSet selected;
  /// |E'_k| per schedule block; empty for schedules without blocks.
  std::vector<std::size_t> block_counts;
};

/// E' = {n in E : xi_n = 1} with xi_{n_i} = [U(seed, i) < delta_{n_i}] for the
/// counter-based uniform U.
SelectionTrial select(const IntegerSet& set, const DensitySchedule& schedule, std::uint64_t seed);

/// delta_n = ell_k / |E_k| on each block of the decomposition (including
/// block 0). The schedule is aligned with decomposition.covered().
DensitySchedule blockwise_schedule(const BlockDecomposition& decomposition,
                                   std::span<const std::uint64_t> ell);

struct KatznelsonLiBlock {
  std::size_t k = 0;
  std::uint64_t ell = 0;
  std::uint64_t size = 0;
  double delta = 0.0;
  /// ell_k / log p_{k+1}; absent for the last block.
  std::optional<double> ell_over_log_next_cut;
  /// log ell_k / log p_k; absent when ell_k = 0 or p_k = 1.
  std::optional<double> log_ell_over_log_cut;
  /// delta_k <= delta_{k-1}; true for block 0.
  bool density_nonincreasing = true;
};

struct KatznelsonLiSchedule {
  DensitySchedule schedule;
  std::vector<KatznelsonLiBlock> blocks;
};

/// ell_k = min((k+2)!, |E_k|) with the growth-condition ratios per block.
KatznelsonLiSchedule katznelson_li_schedule(const BlockDecomposition& decomposition);

/// (k+2)! saturated at UINT64_MAX.
std::uint64_t shifted_factorial(std::size_t k);

struct PowerLaw {
  double alpha = 1.0;
};
struct PaceBased {};
struct CustomDensities {
  std::vector<double> densities;
};
using BourgainForm = std::variant<PowerLaw, PaceBased, CustomDensities>;

struct BourgainDiagnostics {
  std::size_t tail_start = 0;
  /// min over the tail of delta_{n_k} / ((|n_k| - |n_{k-1}|) / |n_{k-1}|).
  std::optional<double> condition_a_min_ratio;
  /// min over the tail of k * delta_{n_k}.
  std::optional<double> condition_b_min_ratio;
  /// sigma_k / log|n_k| at the last k, and its minimum over the tail.
  std::optional<double> sigma_log_ratio_final;
  std::optional<double> sigma_log_ratio_min_tail;
};

struct BourgainSchedule {
  DensitySchedule schedule;
  BourgainDiagnostics diagnostics;
};

/// Nonincreasing schedules for the equidistribution construction:
///   power law  delta_{n_k} = min(1, k^-alpha), 0 <= alpha <= 1
///   pace based delta_{n_k} = min(1, sup_{i >= k} (|n_i| - |n_{i-1}|) / |n_{i-1}|)
///   custom     caller-supplied, must be nonincreasing
/// Asymptotic conditions are reported as ratios over k >= tail_start.
BourgainSchedule bourgain_schedule(const IntegerSet& set, const BourgainForm& form,
                                   std::size_t tail_start = 2);

struct DependenceEstimate {
  unsigned s = 0;
  std::uint64_t ell = 0;
  std::uint64_t set_size = 0;
  std::uint64_t trials = 0;
  std::uint64_t dependent = 0;
  double frequency = 0.0;
  Interval interval;
  double bound = 0.0;
};

/// Fraction of trials in which the uniform selection of density ell/|E| is
/// s-dependent, with a Wilson interval. Trial i uses seed derive_seed(seed, i).
DependenceEstimate monte_carlo_dependence(const IntegerSet& set, std::uint64_t ell, unsigned s,
                                          std::uint64_t trials, std::uint64_t seed,
                                          unsigned threads = 1, double confidence = 0.99);

}  // namespace lacunary
