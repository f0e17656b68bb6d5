#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lacunary/bigint.hpp"
#include "lacunary/circle.hpp"
#include "lacunary/grid.hpp"
#include "lacunary/integer_set.hpp"
#include "lacunary/selection.hpp"

namespace lacunary {

// ---- psi --------------------------------------------------------------------------

struct PsiOptions {
  GridOptions grid{.multiplier = 4, .max_grid = std::uint64_t{1} << 24, .smooth = true};
};

struct PsiValue {
  std::size_t k = 0;
  /// |E' ∩ {n_1, ..., n_k}|
  std::size_t selected = 0;
  double sigma = 0.0;
  /// |n_k|
  BigInt n_k;
  /// sup of the difference polynomial over the evaluated grid; this is the
  /// reported psi(k) and a lower estimate of the true sup-norm.
  double psi = 0.0;
  /// 5 psi when the grid had at least 4|n_k| points.
  std::optional<double> certified_bound;
  std::uint64_t grid_size = 0;
  bool capped = false;
  /// a_k = sqrt(12 sigma_k log|n_k|) and a_k / sigma_k.
  double a_k = 0.0;
  double a_over_sigma = 0.0;
};

struct PsiSeries {
  std::vector<PsiValue> values;
};

/// psi(k) = || |E'_k|^-1 sum_{n in E'_k} e_n - sigma_k^-1 sum_{j<=k} delta_{n_j} e_{n_j} ||
/// with E'_k = E' ∩ {n_1..n_k}, evaluated on the grid of sup_norm_via_grid.
/// Throws "psi undefined" when E'_k is empty or sigma_k = 0.
PsiValue psi(const IntegerSet& set, const SelectionTrial& trial, const DensitySchedule& schedule,
             std::size_t k, const PsiOptions& options = {});

PsiSeries psi_series(const IntegerSet& set, const SelectionTrial& trial,
                     const DensitySchedule& schedule, std::span<const std::size_t> ks,
                     const PsiOptions& options = {});

// ---- summing matrix -----------------------------------------------------------------

struct SummingMatrixRow {
  std::size_t k = 0;
  BigRational sigma;
  /// sum_j a_{k,j}
  BigRational row_sum;
  /// sum_j j |a_{k,j} - a_{k,j+1}|
  BigRational variation_sum;
};

struct SummingMatrixReport {
  std::size_t k_max = 0;
  bool nonnegative = true;
  bool nonincreasing = true;
  bool rows_sum_to_one = true;
  bool variation_sums_one = true;
  /// All four checks hold.
  bool regular = true;
  std::optional<std::string> failure;
  std::vector<SummingMatrixRow> rows;
};

/// Checks the rows a_{k,j} = delta_{n_j} / sigma_k (j <= k) for k = 1..k_max
/// in exact rational arithmetic.
SummingMatrixReport summing_matrix_check(std::span<const BigRational> densities,
                                         std::size_t k_max);

/// Uses the schedule's exact fractions when present and the exact value of
/// each double otherwise.
SummingMatrixReport summing_matrix_check(const DensitySchedule& schedule, std::size_t k_max);

// ---- scan ---------------------------------------------------------------------------

struct ScanOptions {
  /// Rational sample points a/q for every q listed and 0 <= a < q.
  std::vector<std::uint64_t> denominators{1024, 2187};
  /// Irrational sample points frac(m (sqrt 5 - 1) / 2), m = 1..count.
  std::size_t irrational_points = 512;
  /// Points within exclusion_scale / k of a rational b/r with r <= exclusion_q
  /// are excluded at step k.
  std::uint64_t exclusion_q = 16;
  double exclusion_scale = 1.0 / 256.0;
  unsigned threads = 1;
};

struct ScanRow {
  std::size_t k = 0;
  double exclusion_radius = 0.0;
  std::size_t evaluated = 0;
  std::size_t excluded = 0;
  /// max |f_k| over points off the exclusion set.
  double max_modulus = 0.0;
  std::optional<CirclePoint> argmax;
  /// max |f_k| over the excluded points.
  double max_modulus_excluded = 0.0;
};

struct ScanReport {
  ScanOptions options;
  std::vector<ScanRow> rows;
  /// max_modulus is nonincreasing along the rows.
  bool nonincreasing = true;
  /// last max_modulus / first max_modulus.
  std::optional<double> decay_ratio;
};

std::vector<CirclePoint> scan_points(const ScanOptions& options);

/// max |f_k(t)| off the exclusion set for every k in ks (increasing).
ScanReport equidistribution_scan(const IntegerSet& set, std::span<const std::size_t> ks,
                                 const ScanOptions& options = {});

// ---- powers of means against sumset means ------------------------------------------------

struct PowerSumsetComparison {
  std::size_t k = 0;
  std::size_t j = 0;
  std::size_t sumset_size = 0;
  std::size_t points = 0;
  /// max over the points of |f_k(t)^j - g(t)| where g is the mean of the
  /// characters over the j-fold sums of distinct elements of {n_1..n_k}.
  double max_difference = 0.0;
  double bound = 0.0;
  bool within_bound = true;
};

/// 2 (1 - k! / (k^j (k-j)!)); requires j <= k.
double power_sumset_bound(std::size_t k, std::size_t j);

/// For base = {3^i} the j-fold sums of {n_1..n_k} are exactly the first
/// C(k, j) elements of the sumset of the whole sequence, so g is its mean of
/// order C(k, j).
PowerSumsetComparison compare_power_and_sumset_means(const IntegerSet& base, std::size_t k,
                                                     std::size_t j,
                                                     std::span<const CirclePoint> points,
                                                     unsigned threads = 1);

}  // namespace lacunary
