#include "lacunary/selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lacunary/error.hpp"
#include "lacunary/parallel.hpp"
#include "lacunary/relations.hpp"
#include "lacunary/rng.hpp"

namespace lacunary {

// ---- DensitySchedule ----------------------------------------------------------

DensitySchedule::DensitySchedule(IntegerSet source, std::vector<double> densities,
                                 std::vector<Fraction> exact, std::vector<ScheduleBlock> blocks)
    : source_(std::move(source)),
      densities_(std::move(densities)),
      exact_(std::move(exact)),
      blocks_(std::move(blocks)) {
  if (densities_.size() != source_.size()) {
    throw PreconditionError("DensitySchedule: densities not aligned with the source set");
  }
  if (!exact_.empty() && exact_.size() != densities_.size()) {
    throw PreconditionError("DensitySchedule: exact densities not aligned");
  }
  for (const double d : densities_) {
    if (!(d >= 0.0 && d <= 1.0)) {
      throw PreconditionError("DensitySchedule: densities must lie in [0, 1]");
    }
  }
  for (const Fraction& f : exact_) {
    if (f.den == 0 || f.num > f.den) {
      throw PreconditionError("DensitySchedule: exact density outside [0, 1]");
    }
  }
  sigma_ = partial_sums(densities_);
}

DensitySchedule DensitySchedule::constant(IntegerSet source, double density) {
  std::vector<double> densities(source.size(), density);
  return DensitySchedule(std::move(source), std::move(densities));
}

DensitySchedule DensitySchedule::uniform(IntegerSet source, std::uint64_t ell) {
  const std::uint64_t n = source.size();
  if (ell > n) {
    throw PreconditionError("uniform schedule: ell exceeds |E|");
  }
  const Fraction f{ell, n == 0 ? 1 : n};
  std::vector<double> densities(n, f.value());
  std::vector<Fraction> exact(n, f);
  return DensitySchedule(std::move(source), std::move(densities), std::move(exact));
}

std::optional<Fraction> DensitySchedule::exact_density(std::size_t i) const {
  if (exact_.empty()) return std::nullopt;
  return exact_[i];
}

bool DensitySchedule::nonincreasing() const {
  return std::is_sorted(densities_.begin(), densities_.end(), std::greater<>());
}

std::vector<double> DensitySchedule::partial_sums(std::span<const double> densities) {
  std::vector<double> sums;
  sums.reserve(densities.size());
  long double acc = 0;
  for (const double d : densities) {
    acc += d;
    sums.push_back(static_cast<double>(acc));
  }
  return sums;
}

// ---- selection ------------------------------------------------------------------

SelectionTrial select(const IntegerSet& set, const DensitySchedule& schedule, std::uint64_t seed) {
  if (schedule.size() != set.size() ||
      !(set.same_storage(schedule.source()) || set == schedule.source())) {
    throw PreconditionError("select: schedule is not aligned with the set");
  }
  SelectionTrial trial;
  trial.seed = seed;
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (counter_uniform(seed, i) < schedule.density(i)) {
      trial.indices.push_back(i);
    }
  }
  trial.selected = set.subset(trial.indices, set.label() + "'");
  if (schedule.blockwise()) {
    trial.block_counts.assign(schedule.blocks().size(), 0);
    std::size_t b = 0;
    for (const std::size_t i : trial.indices) {
      while (i >= schedule.blocks()[b].end) ++b;
      ++trial.block_counts[b];
    }
  }
  return trial;
}

DensitySchedule blockwise_schedule(const BlockDecomposition& decomposition,
                                   std::span<const std::uint64_t> ell) {
  if (ell.size() != decomposition.blocks.size()) {
    throw PreconditionError("blockwise_schedule: need one ell per block (" +
                            std::to_string(decomposition.blocks.size()) + "), got " +
                            std::to_string(ell.size()));
  }
  const std::size_t n = decomposition.covered_count();
  std::vector<double> densities(n);
  std::vector<Fraction> exact(n);
  std::vector<ScheduleBlock> blocks;
  for (std::size_t b = 0; b < ell.size(); ++b) {
    const Block& block = decomposition.blocks[b];
    const std::uint64_t size = block.count();
    if (ell[b] > size) {
      throw PreconditionError("blockwise_schedule: ell_" + std::to_string(block.k) + " = " +
                              std::to_string(ell[b]) + " exceeds |E_k| = " +
                              std::to_string(size));
    }
    const Fraction f{ell[b], size == 0 ? 1 : size};
    for (std::size_t i = block.begin; i < block.end; ++i) {
      densities[i] = f.value();
      exact[i] = f;
    }
    blocks.push_back(ScheduleBlock{block.k, ell[b], size, f.value(), block.begin, block.end});
  }
  return DensitySchedule(decomposition.covered(), std::move(densities), std::move(exact),
                         std::move(blocks));
}

std::uint64_t shifted_factorial(std::size_t k) {
  std::uint64_t value = 1;
  for (std::uint64_t i = 2; i <= k + 2; ++i) {
    if (value > std::numeric_limits<std::uint64_t>::max() / i) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    value *= i;
  }
  return value;
}

KatznelsonLiSchedule katznelson_li_schedule(const BlockDecomposition& decomposition) {
  std::vector<std::uint64_t> ell;
  for (const Block& block : decomposition.blocks) {
    ell.push_back(std::min<std::uint64_t>(shifted_factorial(block.k), block.count()));
  }
  DensitySchedule schedule = blockwise_schedule(decomposition, ell);

  const auto& cuts = decomposition.partition.cut_points();
  std::vector<KatznelsonLiBlock> blocks;
  for (std::size_t b = 0; b < ell.size(); ++b) {
    const ScheduleBlock& sb = schedule.blocks()[b];
    KatznelsonLiBlock entry;
    entry.k = sb.k;
    entry.ell = sb.ell;
    entry.size = sb.size;
    entry.delta = sb.delta;
    if (b + 1 < cuts.size()) {
      entry.ell_over_log_next_cut =
          static_cast<double>(static_cast<long double>(sb.ell) / log_abs(cuts[b + 1]));
    }
    if (sb.ell > 1 && cuts[b] > 1) {
      entry.log_ell_over_log_cut = static_cast<double>(
          std::log(static_cast<long double>(sb.ell)) / log_abs(cuts[b]));
    }
    entry.density_nonincreasing = b == 0 || sb.delta <= schedule.blocks()[b - 1].delta;
    blocks.push_back(entry);
  }
  return KatznelsonLiSchedule{std::move(schedule), std::move(blocks)};
}

namespace {

// (|n_k| - |n_{k-1}|) / |n_{k-1}|, infinite when n_{k-1} = 0.
std::vector<long double> paces(const IntegerSet& set) {
  std::vector<long double> pace(set.size(), std::numeric_limits<long double>::infinity());
  for (std::size_t k = 1; k < set.size(); ++k) {
    const BigInt prev = abs(set[k - 1]);
    if (prev == 0) continue;
    const BigInt gap = abs(set[k]) - prev;
    pace[k] = gap == 0 ? 0.0L : std::exp(log_abs(gap) - log_abs(prev));
  }
  return pace;
}

}  // namespace

BourgainSchedule bourgain_schedule(const IntegerSet& set, const BourgainForm& form,
                                   std::size_t tail_start) {
  const std::size_t n = set.size();
  std::vector<double> densities(n);
  std::vector<Fraction> exact;
  const auto pace = paces(set);

  if (const auto* power = std::get_if<PowerLaw>(&form)) {
    if (power->alpha < 0.0) {
      throw PreconditionError("bourgain_schedule: alpha < 0 gives an increasing schedule");
    }
    if (power->alpha > 1.0) {
      throw PreconditionError("bourgain_schedule: power law needs alpha <= 1");
    }
    const bool exact_form = power->alpha == 0.0 || power->alpha == 1.0;
    if (exact_form) exact.resize(n);
    for (std::size_t k = 1; k <= n; ++k) {
      densities[k - 1] = std::min(1.0, std::pow(static_cast<double>(k), -power->alpha));
      if (exact_form) {
        exact[k - 1] = power->alpha == 0.0 ? Fraction{1, 1} : Fraction{1, k};
      }
    }
  } else if (std::holds_alternative<PaceBased>(form)) {
    long double running = 0;
    for (std::size_t k = n; k-- > 0;) {
      running = std::max(running, pace[k]);
      densities[k] = static_cast<double>(std::min<long double>(1.0L, running));
    }
  } else {
    const auto& custom = std::get<CustomDensities>(form).densities;
    if (custom.size() != n) {
      throw PreconditionError("bourgain_schedule: custom densities not aligned with the set");
    }
    if (!std::is_sorted(custom.begin(), custom.end(), std::greater<>())) {
      throw PreconditionError("bourgain_schedule: densities must be nonincreasing");
    }
    densities = custom;
  }

  DensitySchedule schedule(set, std::move(densities), std::move(exact));

  BourgainDiagnostics diag;
  diag.tail_start = tail_start;
  const auto update_min = [](std::optional<double>& slot, double value) {
    if (!slot || value < *slot) slot = value;
  };
  for (std::size_t k = std::max<std::size_t>(tail_start, 1); k <= n; ++k) {
    const double delta = schedule.density(k - 1);
    if (std::isfinite(static_cast<double>(pace[k - 1])) && pace[k - 1] > 0) {
      update_min(diag.condition_a_min_ratio, static_cast<double>(delta / pace[k - 1]));
    }
    update_min(diag.condition_b_min_ratio, delta * static_cast<double>(k));
    if (abs(set[k - 1]) > 1) {
      const double ratio =
          static_cast<double>(schedule.sigma(k) / log_abs(set[k - 1]));
      update_min(diag.sigma_log_ratio_min_tail, ratio);
    }
  }
  if (n > 0 && abs(set[n - 1]) > 1) {
    diag.sigma_log_ratio_final = static_cast<double>(schedule.sigma(n) / log_abs(set[n - 1]));
  }
  return BourgainSchedule{std::move(schedule), diag};
}

DependenceEstimate monte_carlo_dependence(const IntegerSet& set, std::uint64_t ell, unsigned s,
                                          std::uint64_t trials, std::uint64_t seed,
                                          unsigned threads, double confidence) {
  if (trials == 0) {
    throw PreconditionError("monte_carlo_dependence: trials must be >= 1");
  }
  if (ell > set.size()) {
    throw PreconditionError("monte_carlo_dependence: ell exceeds |E|");
  }
  const DensitySchedule schedule = DensitySchedule::uniform(set, ell);
  std::vector<char> dependent(trials, 0);
  parallel_for(trials, threads, [&](std::size_t t) {
    const SelectionTrial trial = select(set, schedule, derive_seed(seed, t));
    dependent[t] = is_s_independent(trial.selected, s).independent ? 0 : 1;
  });

  DependenceEstimate estimate;
  estimate.s = s;
  estimate.ell = ell;
  estimate.set_size = set.size();
  estimate.trials = trials;
  estimate.dependent =
      static_cast<std::uint64_t>(std::count(dependent.begin(), dependent.end(), 1));
  estimate.frequency = static_cast<double>(estimate.dependent) / static_cast<double>(trials);
  estimate.interval = wilson_interval(estimate.dependent, trials, confidence);
  estimate.bound = s >= 2 ? dependence_probability_bound(s, ell, set.size()) : 0.0;
  return estimate;
}

}  // namespace lacunary
