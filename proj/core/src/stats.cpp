#include "lacunary/stats.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/distributions/normal.hpp>

#include "lacunary/error.hpp"

namespace lacunary {

double normal_quantile(double confidence) {
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw PreconditionError("confidence must lie in (0, 1)");
  }
  const boost::math::normal standard;
  return boost::math::quantile(standard, 0.5 + 0.5 * confidence);
}

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double confidence) {
  if (trials == 0) {
    return Interval{0.0, 1.0};
  }
  const double z = normal_quantile(confidence);
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double centre = (p + z2 / (2 * n)) / (1 + z2 / n);
  const double half = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / (1 + z2 / n);
  // exact endpoints at p = 0 and p = 1
  const double low = successes == 0 ? 0.0 : std::max(0.0, centre - half);
  const double high = successes == trials ? 1.0 : std::min(1.0, centre + half);
  return Interval{low, high};
}

}  // namespace lacunary
