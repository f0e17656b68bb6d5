#include "lacunary/equidistribution.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "lacunary/error.hpp"
#include "lacunary/parallel.hpp"

namespace lacunary {

// ---- psi --------------------------------------------------------------------------

PsiValue psi(const IntegerSet& set, const SelectionTrial& trial, const DensitySchedule& schedule,
             std::size_t k, const PsiOptions& options) {
  if (schedule.size() != set.size()) {
    throw PreconditionError("psi: schedule is not aligned with the set");
  }
  if (k == 0 || k > set.size()) {
    throw PreconditionError("psi: k = " + std::to_string(k) + " outside 1..|E|");
  }
  if (!trial.indices.empty() && trial.indices.back() >= set.size()) {
    throw PreconditionError("psi: selection does not belong to the set");
  }
  PsiValue value;
  value.k = k;
  value.selected = static_cast<std::size_t>(
      std::lower_bound(trial.indices.begin(), trial.indices.end(), k) - trial.indices.begin());
  value.sigma = schedule.sigma(k);
  value.n_k = abs(set[k - 1]);
  if (value.selected == 0) {
    throw PreconditionError("psi undefined: no element of {n_1..n_" + std::to_string(k) +
                            "} was selected");
  }
  if (!(value.sigma > 0.0)) {
    throw PreconditionError("psi undefined: sigma_" + std::to_string(k) + " = 0");
  }

  const long double inv_count = 1.0L / static_cast<long double>(value.selected);
  const long double inv_sigma = 1.0L / static_cast<long double>(value.sigma);
  SparsePolynomial difference;
  std::size_t next = 0;
  for (std::size_t j = 0; j < k; ++j) {
    long double c = -static_cast<long double>(schedule.density(j)) * inv_sigma;
    if (next < trial.indices.size() && trial.indices[next] == j) {
      c += inv_count;
      ++next;
    }
    if (c != 0.0L) difference.add(set[j], static_cast<double>(c));
  }
  const GridSupNorm sup = sup_norm_via_grid(difference, options.grid);
  value.psi = sup.coarse_sup;
  value.certified_bound = sup.certified_bound;
  value.grid_size = sup.grid_size;
  value.capped = sup.capped;
  const long double log_n = value.n_k > 1 ? log_abs(value.n_k) : 0.0L;
  value.a_k = static_cast<double>(std::sqrt(12.0L * value.sigma * log_n));
  value.a_over_sigma = value.a_k / value.sigma;
  return value;
}

PsiSeries psi_series(const IntegerSet& set, const SelectionTrial& trial,
                     const DensitySchedule& schedule, std::span<const std::size_t> ks,
                     const PsiOptions& options) {
  PsiSeries series;
  for (const std::size_t k : ks) {
    series.values.push_back(psi(set, trial, schedule, k, options));
  }
  return series;
}

// ---- summing matrix -----------------------------------------------------------------

SummingMatrixReport summing_matrix_check(std::span<const BigRational> densities,
                                         std::size_t k_max) {
  if (k_max > densities.size()) {
    throw PreconditionError("summing_matrix_check: k_max exceeds the schedule length");
  }
  SummingMatrixReport report;
  report.k_max = k_max;
  const auto fail = [&report](std::string why) {
    if (!report.failure) report.failure = std::move(why);
  };
  for (std::size_t j = 0; j < k_max; ++j) {
    if (densities[j] < 0) {
      report.nonnegative = false;
      fail("negative density at j = " + std::to_string(j + 1));
    }
    if (j > 0 && densities[j] > densities[j - 1]) {
      report.nonincreasing = false;
      fail("density increases at j = " + std::to_string(j + 1));
    }
  }

  BigRational sigma = 0;
  for (std::size_t k = 1; k <= k_max; ++k) {
    sigma += densities[k - 1];
    if (sigma == 0) {
      report.rows_sum_to_one = false;
      report.variation_sums_one = false;
      fail("sigma_" + std::to_string(k) + " = 0");
      break;
    }
    SummingMatrixRow row;
    row.k = k;
    row.sigma = sigma;
    for (std::size_t j = 1; j <= k; ++j) {
      const BigRational a = densities[j - 1] / sigma;
      const BigRational a_next = j < k ? BigRational(densities[j] / sigma) : BigRational(0);
      row.row_sum += a;
      row.variation_sum += j * abs(a - a_next);
    }
    if (row.row_sum != 1) {
      report.rows_sum_to_one = false;
      fail("row " + std::to_string(k) + " sums to " + to_string(row.row_sum));
    }
    if (row.variation_sum != 1) {
      report.variation_sums_one = false;
      fail("row " + std::to_string(k) + " has variation sum " + to_string(row.variation_sum));
    }
    report.rows.push_back(std::move(row));
  }
  report.regular = report.nonnegative && report.nonincreasing && report.rows_sum_to_one &&
                   report.variation_sums_one;
  return report;
}

SummingMatrixReport summing_matrix_check(const DensitySchedule& schedule, std::size_t k_max) {
  std::vector<BigRational> densities;
  densities.reserve(std::min(k_max, schedule.size()));
  for (std::size_t i = 0; i < std::min(k_max, schedule.size()); ++i) {
    if (const auto f = schedule.exact_density(i)) {
      densities.emplace_back(BigInt(f->num), BigInt(f->den));
    } else {
      densities.push_back(exact_rational(schedule.density(i)));
    }
  }
  return summing_matrix_check(densities, k_max);
}

// ---- scan ---------------------------------------------------------------------------

std::vector<CirclePoint> scan_points(const ScanOptions& options) {
  std::vector<CirclePoint> points;
  std::set<std::pair<std::uint64_t, std::uint64_t>> seen;
  for (const std::uint64_t q : options.denominators) {
    for (std::uint64_t a = 0; a < q; ++a) {
      const CirclePoint p = CirclePoint::rational(static_cast<std::int64_t>(a), q);
      if (seen.emplace(p.numerator(), p.denominator()).second) points.push_back(p);
    }
  }
  const long double golden = (std::sqrt(5.0L) - 1.0L) / 2.0L;
  for (std::size_t m = 1; m <= options.irrational_points; ++m) {
    points.push_back(CirclePoint::turns(static_cast<long double>(m) * golden));
  }
  return points;
}

ScanReport equidistribution_scan(const IntegerSet& set, std::span<const std::size_t> ks,
                                 const ScanOptions& options) {
  if (std::find(ks.begin(), ks.end(), std::size_t{0}) != ks.end()) {
    throw PreconditionError("equidistribution_scan: k must be >= 1");
  }
  const std::vector<CirclePoint> points = scan_points(options);
  std::vector<std::vector<std::complex<long double>>> sums(points.size());
  std::vector<long double> distance(points.size());
  parallel_for(points.size(), options.threads, [&](std::size_t i) {
    sums[i] = weyl_sums(set, ks, points[i]);
    distance[i] = distance_to_rationals(points[i].theta(), options.exclusion_q);
  });

  ScanReport report;
  report.options = options;
  for (std::size_t r = 0; r < ks.size(); ++r) {
    ScanRow row;
    row.k = ks[r];
    row.exclusion_radius = options.exclusion_scale / static_cast<double>(ks[r]);
    for (std::size_t i = 0; i < points.size(); ++i) {
      const double modulus = static_cast<double>(
          std::min(1.0L, std::abs(sums[i][r]) / static_cast<long double>(ks[r])));
      if (distance[i] < row.exclusion_radius) {
        ++row.excluded;
        row.max_modulus_excluded = std::max(row.max_modulus_excluded, modulus);
        continue;
      }
      ++row.evaluated;
      if (!row.argmax || modulus > row.max_modulus) {
        row.max_modulus = modulus;
        row.argmax = points[i];
      }
    }
    if (!report.rows.empty() && row.max_modulus > report.rows.back().max_modulus) {
      report.nonincreasing = false;
    }
    report.rows.push_back(row);
  }
  if (!report.rows.empty() && report.rows.front().max_modulus > 0.0) {
    report.decay_ratio = report.rows.back().max_modulus / report.rows.front().max_modulus;
  }
  return report;
}

// ---- powers of means against sumset means ------------------------------------------------

double power_sumset_bound(std::size_t k, std::size_t j) {
  if (j > k) {
    throw PreconditionError("power_sumset_bound: j exceeds k");
  }
  long double ratio = 1.0L;
  for (std::size_t i = 0; i < j; ++i) {
    ratio *= static_cast<long double>(k - i) / static_cast<long double>(k);
  }
  return static_cast<double>(2.0L * (1.0L - ratio));
}

PowerSumsetComparison compare_power_and_sumset_means(const IntegerSet& base, std::size_t k,
                                                     std::size_t j,
                                                     std::span<const CirclePoint> points,
                                                     unsigned threads) {
  if (j == 0 || j > k || k > base.size()) {
    throw PreconditionError("compare_power_and_sumset_means: need 1 <= j <= k <= |base|");
  }
  const IntegerSet prefix = base.prefix(k);
  const IntegerSet sums = generate_sumset(prefix, j);
  PowerSumsetComparison result;
  result.k = k;
  result.j = j;
  result.sumset_size = sums.size();
  result.points = points.size();
  result.bound = power_sumset_bound(k, j);

  std::vector<double> difference(points.size());
  const std::size_t k_only[] = {k};
  const std::size_t all_sums[] = {sums.size()};
  parallel_for(points.size(), threads, [&](std::size_t i) {
    const std::complex<long double> f =
        weyl_sums(prefix, k_only, points[i]).front() / static_cast<long double>(k);
    const std::complex<long double> g =
        weyl_sums(sums, all_sums, points[i]).front() / static_cast<long double>(sums.size());
    std::complex<long double> power = 1.0L;
    for (std::size_t p = 0; p < j; ++p) power *= f;
    difference[i] = static_cast<double>(std::abs(power - g));
  });
  for (const double d : difference) result.max_difference = std::max(result.max_difference, d);
  result.within_bound = result.max_difference <= result.bound;
  return result;
}

}  // namespace lacunary
