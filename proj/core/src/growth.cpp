#include <algorithm>
#include <cmath>
#include <limits>

#include "lacunary/error.hpp"
#include "lacunary/integer_set.hpp"

namespace lacunary {

namespace {

BigInt from_long_double(long double x) {
  // Exact conversion of the integral part of a finite long double.
  x = std::floor(x);
  if (x < 1) {
    return BigInt(0);
  }
  int exponent = 0;
  const long double mantissa = std::frexp(x, &exponent);
  const auto head = static_cast<std::uint64_t>(std::ldexp(mantissa, 64));
  BigInt value = head;
  if (exponent >= 64) {
    value <<= (exponent - 64);
  } else {
    value >>= (64 - exponent);
  }
  return value;
}

}  // namespace

GrowthReport classify_growth(const IntegerSet& set, const GrowthOptions& options) {
  if (options.samples < 2) {
    throw PreconditionError("classify_growth: need at least 2 sample points");
  }
  if (set.empty()) {
    throw PreconditionError("insufficient data: empty set");
  }
  const BigInt top = set.max_abs();
  BigInt t_min = options.t_min.value_or(std::max<BigInt>(BigInt(2), sqrt(top)));
  BigInt t_max = options.t_max.value_or(top / 2);
  if (t_min < 2) {
    t_min = 2;
  }
  if (t_max <= t_min) {
    throw PreconditionError("insufficient data: empty fit range");
  }
  const std::size_t below = distribution_function(set, t_min - 1);
  const std::size_t within = distribution_function(set, t_max) - below;
  if (within < options.min_points_in_range) {
    throw PreconditionError("insufficient data: " + std::to_string(within) +
                            " elements in the fit range, need " +
                            std::to_string(options.min_points_in_range));
  }

  const long double log_lo = log_abs(t_min);
  const long double log_hi = log_abs(t_max);
  double epsilon_hat = std::numeric_limits<double>::infinity();
  double c_hat = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < options.samples; ++i) {
    BigInt t;
    if (i == 0) {
      t = t_min;
    } else if (i + 1 == options.samples) {
      t = t_max;
    } else {
      const long double frac = static_cast<long double>(i) / (options.samples - 1);
      t = from_long_double(std::exp(log_lo + frac * (log_hi - log_lo)));
      t = std::clamp(t, t_min, t_max);
    }
    const std::size_t at_t = distribution_function(set, t);
    const std::size_t at_2t = distribution_function(set, 2 * t);
    const double eps =
        at_t == 0 ? 0.0
                  : static_cast<double>(std::log(static_cast<long double>(at_t)) / log_abs(t));
    epsilon_hat = std::min(epsilon_hat, eps);
    if (at_t > 0) {
      c_hat = std::min(c_hat, static_cast<double>(at_2t) / static_cast<double>(at_t));
    }
  }
  if (!std::isfinite(c_hat)) {
    c_hat = 1.0;
  }

  GrowthReport report;
  report.epsilon_hat = epsilon_hat;
  report.c_hat = c_hat;
  report.is_polynomial = epsilon_hat > options.eta;
  // Regularity forces E[t] >= t^{log2 c}, so it is only claimed together with
  // polynomial growth.
  report.is_regular = report.is_polynomial && c_hat > 1.0 + options.eta;
  report.t_min = std::move(t_min);
  report.t_max = std::move(t_max);
  report.eta = options.eta;
  report.samples = options.samples;
  return report;
}

}  // namespace lacunary
