#include "lacunary/bernstein.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "lacunary/error.hpp"
#include "lacunary/parallel.hpp"
#include "lacunary/rng.hpp"

namespace lacunary {

double bernstein_bound(double sigma, double a) {
  if (!(a > 0.0)) {
    throw PreconditionError("bernstein_bound: a must be positive");
  }
  if (!(sigma >= 0.0)) {
    throw PreconditionError("bernstein_bound: sigma must be nonnegative");
  }
  return 4.0 * std::exp(-a * a / (4.0 * (sigma + a)));
}

std::string to_string(BernsteinDistribution kind) {
  switch (kind) {
    case BernsteinDistribution::rademacher:
      return "rademacher";
    case BernsteinDistribution::centered_selector:
      return "centered_selector";
    case BernsteinDistribution::uniform:
      return "uniform";
    case BernsteinDistribution::unit_phase:
      return "unit_phase";
  }
  return "unknown";
}

BernsteinDistribution bernstein_distribution_from_string(const std::string& name) {
  for (const auto kind :
       {BernsteinDistribution::rademacher, BernsteinDistribution::centered_selector,
        BernsteinDistribution::uniform, BernsteinDistribution::unit_phase}) {
    if (to_string(kind) == name) return kind;
  }
  throw ParseError("unknown distribution '" + name + "'");
}

double BernsteinSpec::variance() const {
  const double a2 = amplitude * amplitude;
  switch (kind) {
    case BernsteinDistribution::rademacher:
    case BernsteinDistribution::unit_phase:
      return a2;
    case BernsteinDistribution::centered_selector:
      return a2 * delta * (1.0 - delta);
    case BernsteinDistribution::uniform:
      return a2 / 3.0;
  }
  return a2;
}

double BernsteinSpec::max_abs() const {
  if (kind == BernsteinDistribution::centered_selector) {
    return amplitude * std::max(delta, 1.0 - delta);
  }
  return amplitude;
}

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

std::complex<double> draw(const BernsteinSpec& spec, double u) {
  switch (spec.kind) {
    case BernsteinDistribution::rademacher:
      return u < 0.5 ? -spec.amplitude : spec.amplitude;
    case BernsteinDistribution::centered_selector:
      return spec.amplitude * ((u < spec.delta ? 1.0 : 0.0) - spec.delta);
    case BernsteinDistribution::uniform:
      return spec.amplitude * (2.0 * u - 1.0);
    case BernsteinDistribution::unit_phase:
      return std::polar(spec.amplitude, kTwoPi * u);
  }
  return 0.0;
}

}  // namespace

BernsteinReport monte_carlo_bernstein(std::size_t n, const BernsteinSpec& spec,
                                      std::span<const double> a_values, std::uint64_t trials,
                                      std::uint64_t seed, unsigned threads, double confidence) {
  if (!(spec.amplitude >= 0.0) || spec.amplitude > 1.0) {
    throw PreconditionError("monte_carlo_bernstein: amplitude must lie in [0, 1] so |X_i| <= 1");
  }
  if (spec.kind == BernsteinDistribution::centered_selector &&
      !(spec.delta >= 0.0 && spec.delta <= 1.0)) {
    throw PreconditionError("monte_carlo_bernstein: delta must lie in [0, 1]");
  }
  if (trials == 0) {
    throw PreconditionError("monte_carlo_bernstein: trials must be >= 1");
  }
  BernsteinReport report;
  report.n = n;
  report.spec = spec;
  report.sigma = static_cast<double>(n) * spec.variance();
  report.trials = trials;
  report.seed = seed;

  std::vector<double> magnitude(trials);
  parallel_for(trials, threads, [&](std::size_t t) {
    const std::uint64_t trial_seed = derive_seed(seed, t);
    std::complex<double> sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      sum += draw(spec, counter_uniform(trial_seed, i));
    }
    magnitude[t] = std::abs(sum);
  });
  std::sort(magnitude.begin(), magnitude.end());

  for (const double a : a_values) {
    BernsteinCell cell;
    cell.a = a;
    cell.exceed = static_cast<std::uint64_t>(
        magnitude.end() - std::lower_bound(magnitude.begin(), magnitude.end(), a));
    cell.frequency = static_cast<double>(cell.exceed) / static_cast<double>(trials);
    cell.interval = wilson_interval(cell.exceed, trials, confidence);
    cell.bound = bernstein_bound(report.sigma, a);
    cell.within_bound = cell.frequency <= cell.bound;
    report.cells.push_back(cell);
  }
  return report;
}

}  // namespace lacunary
