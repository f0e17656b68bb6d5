#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lacunary/stats.hpp"

namespace lacunary {

/// 4 exp(-a^2 / (4 (sigma + a))). Requires sigma >= 0 and a > 0.
double bernstein_bound(double sigma, double a);

enum class BernsteinDistribution {
  rademacher,         // X = +-amplitude
  centered_selector,  // X = amplitude (xi - delta), xi ~ Bernoulli(delta)
  uniform,            // X uniform on [-amplitude, amplitude]
  unit_phase,         // X = amplitude exp(2 pi i U), complex
};

std::string to_string(BernsteinDistribution kind);
BernsteinDistribution bernstein_distribution_from_string(const std::string& name);

struct BernsteinSpec {
  BernsteinDistribution kind = BernsteinDistribution::rademacher;
  double delta = 0.5;
  double amplitude = 1.0;

  /// E|X|^2 of one variable.
  double variance() const;
  /// sup |X|.
  double max_abs() const;
};

struct BernsteinCell {
  double a = 0.0;
  std::uint64_t exceed = 0;
  double frequency = 0.0;
  Interval interval;
  double bound = 0.0;
  bool within_bound = true;
};

struct BernsteinReport {
  std::size_t n = 0;
  BernsteinSpec spec;
  /// sigma = n E|X|^2
  double sigma = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<BernsteinCell> cells;
};

/// Empirical P(|X_1 + ... + X_n| >= a) for i.i.d. centered X_i with
/// |X_i| <= 1, next to the Bernstein bound. Trial t draws X_i from
/// counter_uniform(derive_seed(seed, t), i). Throws when |X_i| <= 1 or
/// E X_i = 0 would fail.
BernsteinReport monte_carlo_bernstein(std::size_t n, const BernsteinSpec& spec,
                                      std::span<const double> a_values, std::uint64_t trials,
                                      std::uint64_t seed, unsigned threads = 1,
                                      double confidence = 0.99);

}  // namespace lacunary
