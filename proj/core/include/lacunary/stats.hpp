#pragma once

#include <cstdint>

namespace lacunary {

struct Interval {
  double low = 0.0;
  double high = 0.0;
  double half_width() const { return 0.5 * (high - low); }
};

/// Two-sided z quantile for a confidence level, e.g. 0.99 -> 2.5758.
double normal_quantile(double confidence);

/// Wilson score interval for successes out of trials.
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double confidence = 0.99);

}  // namespace lacunary
