#include "lacunary/circle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "lacunary/error.hpp"
#include "lacunary/parallel.hpp"

namespace lacunary {

namespace {

constexpr long double kTwoPi = 6.283185307179586476925286766559005768L;
constexpr std::uint64_t kMaxRootTable = std::uint64_t{1} << 16;

std::complex<long double> unit(long double turns) {
  const long double angle = kTwoPi * turns;
  return {std::cos(angle), std::sin(angle)};
}

// exp(2 pi i r/q), exact at multiples of a quarter turn.
std::complex<long double> root_of_unity(std::uint64_t r, std::uint64_t q) {
  const unsigned __int128 four_r = static_cast<unsigned __int128>(r) * 4;
  if (four_r % q == 0) {
    switch (static_cast<unsigned>((four_r / q) % 4)) {
      case 0:
        return {1.0L, 0.0L};
      case 1:
        return {0.0L, 1.0L};
      case 2:
        return {-1.0L, 0.0L};
      default:
        return {0.0L, -1.0L};
    }
  }
  // Fold into (-1/2, 1/2] turns before taking the angle.
  const long double x = r * 2 > q ? -static_cast<long double>(q - r) / q
                                   : static_cast<long double>(r) / q;
  return unit(x);
}

std::uint64_t residue(std::int64_t n, std::uint64_t q) {
  const __int128 m = static_cast<__int128>(n) % static_cast<__int128>(q);
  return static_cast<std::uint64_t>(m < 0 ? m + q : m);
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t q) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % q);
}

unsigned __int128 low_128_bits(const BigInt& n) {
  const BigInt magnitude = abs(n);
  const BigInt mask = (BigInt(1) << 64) - 1;
  const auto lo = static_cast<std::uint64_t>(magnitude & mask);
  const auto hi = static_cast<std::uint64_t>((magnitude >> 64) & mask);
  unsigned __int128 r = (static_cast<unsigned __int128>(hi) << 64) | lo;
  if (n < 0) r = ~r + 1;
  return r;
}

}  // namespace

CirclePoint CirclePoint::rational(std::int64_t a, std::uint64_t q) {
  if (q == 0) {
    throw PreconditionError("circle point: denominator q = 0");
  }
  std::uint64_t r = residue(a, q);
  const std::uint64_t g = std::gcd(r, q);
  CirclePoint p;
  p.rational_ = true;
  p.a_ = g == 0 ? 0 : r / g;
  p.q_ = g == 0 ? 1 : q / g;
  if (p.a_ == 0) p.q_ = 1;
  p.theta_ = static_cast<long double>(p.a_) / static_cast<long double>(p.q_);
  return p;
}

CirclePoint CirclePoint::turns(long double x) {
  if (!std::isfinite(x)) {
    throw PreconditionError("circle point: angle must be finite");
  }
  long double t = x - std::floor(x);
  if (t >= 1.0L) t = 0.0L;
  CirclePoint p;
  p.theta_ = t;
  return p;
}

std::string CirclePoint::describe() const {
  if (rational_) {
    return std::to_string(a_) + "/" + std::to_string(q_);
  }
  std::ostringstream out;
  out.precision(21);
  out << theta_;
  return out.str();
}

long double distance_to_rationals(long double theta, std::uint64_t max_denominator) {
  long double best = 1.0L;
  for (std::uint64_t r = 1; r <= max_denominator; ++r) {
    const long double b = std::nearbyint(theta * r);
    best = std::min(best, std::fabs(theta - b / r));
  }
  return best;
}

// ---- PhaseEvaluator -----------------------------------------------------------

PhaseEvaluator::PhaseEvaluator(const CirclePoint& point) : point_(point) {
  if (point.is_rational()) {
    const std::uint64_t q = point.denominator();
    if (q <= kMaxRootTable) {
      roots_.resize(q);
      for (std::uint64_t r = 0; r < q; ++r) roots_[r] = root_of_unity(r, q);
    }
    return;
  }
  if (point.theta() == 0.0L) {
    return;
  }
  int exponent = 0;
  const long double m = std::frexp(point.theta(), &exponent);
  mantissa_ = static_cast<std::uint64_t>(std::ldexp(m, 64));
  shift_ = static_cast<unsigned>(64 - exponent);
}

std::complex<long double> PhaseEvaluator::from_residue(std::uint64_t r) const {
  return roots_.empty() ? root_of_unity(r, point_.denominator()) : roots_[r];
}

std::complex<long double> PhaseEvaluator::from_fraction(unsigned __int128 r) const {
  // r / 2^shift_ in [0, 1), folded into [-1/2, 1/2).
  long double x = std::ldexp(static_cast<long double>(r), -static_cast<int>(shift_));
  if (x >= 0.5L) x -= 1.0L;
  return unit(x);
}

std::complex<long double> PhaseEvaluator::operator()(std::int64_t n) const {
  if (point_.is_rational()) {
    const std::uint64_t q = point_.denominator();
    return from_residue(mul_mod(residue(n, q), point_.numerator(), q));
  }
  if (shift_ == 0) return {1.0L, 0.0L};
  if (shift_ > 128) return (*this)(BigInt(n));
  const auto r = static_cast<unsigned __int128>(static_cast<__int128>(n));
  unsigned __int128 product = r * mantissa_;
  if (shift_ < 128) product &= (static_cast<unsigned __int128>(1) << shift_) - 1;
  return from_fraction(product);
}

std::complex<long double> PhaseEvaluator::operator()(const BigInt& n) const {
  if (point_.is_rational()) {
    const std::uint64_t q = point_.denominator();
    return from_residue(mul_mod(mod_u64(n, q), point_.numerator(), q));
  }
  if (shift_ == 0) return {1.0L, 0.0L};
  if (shift_ <= 128) {
    // (n mod 2^128) * M mod 2^128, split so every product fits 128 bits.
    const unsigned __int128 r = low_128_bits(n);
    const auto r_lo = static_cast<std::uint64_t>(r);
    const auto r_hi = static_cast<std::uint64_t>(r >> 64);
    unsigned __int128 product = static_cast<unsigned __int128>(r_lo) * mantissa_;
    product += static_cast<unsigned __int128>(r_hi * mantissa_) << 64;
    if (shift_ < 128) product &= (static_cast<unsigned __int128>(1) << shift_) - 1;
    return from_fraction(product);
  }
  // theta below 2^-64: exact reduction in big integers.
  const BigInt modulus = BigInt(1) << shift_;
  BigInt product = (n * mantissa_) % modulus;
  if (product < 0) product += modulus;
  const std::size_t bits = product == 0 ? 0 : msb(product) + 1;
  const std::size_t drop = bits > 64 ? bits - 64 : 0;
  const auto top = static_cast<std::uint64_t>(product >> drop);
  long double x = std::ldexp(static_cast<long double>(top),
                             static_cast<int>(drop) - static_cast<int>(shift_));
  if (x >= 0.5L) x -= 1.0L;
  return unit(x);
}

// ---- Weyl means -------------------------------------------------------------------

std::vector<std::complex<long double>> weyl_sums(const IntegerSet& set,
                                                 std::span<const std::size_t> ks,
                                                 const CirclePoint& point) {
  if (!std::is_sorted(ks.begin(), ks.end())) {
    throw PreconditionError("weyl_sums: k values must be increasing");
  }
  if (!ks.empty() && ks.back() > set.size()) {
    throw PreconditionError("weyl_sums: k exceeds |E|");
  }
  const PhaseEvaluator phase(point);
  const auto small = set.small_view();
  std::vector<std::complex<long double>> sums;
  sums.reserve(ks.size());
  std::complex<long double> acc{0.0L, 0.0L};
  std::size_t j = 0;
  for (const std::size_t k : ks) {
    for (; j < k; ++j) {
      acc += small ? phase((*small)[j]) : phase(set[j]);
    }
    sums.push_back(acc);
  }
  return sums;
}

WeylReport weyl_means(const IntegerSet& set, std::size_t k, std::span<const CirclePoint> points,
                      unsigned threads) {
  if (k == 0) {
    throw PreconditionError("weyl_means: k must be >= 1");
  }
  if (k > set.size()) {
    throw PreconditionError("weyl_means: k = " + std::to_string(k) + " exceeds |E| = " +
                            std::to_string(set.size()));
  }
  WeylReport report;
  report.k = k;
  report.values.resize(points.size(), WeylValue{CirclePoint::rational(0, 1), {}, {}, 0.0});
  const std::size_t ks[] = {k};
  parallel_for(points.size(), threads, [&](std::size_t i) {
    const auto sum = weyl_sums(set, ks, points[i]).front();
    const std::complex<long double> mean = sum / static_cast<long double>(k);
    report.values[i] = WeylValue{points[i], sum, std::complex<double>(mean),
                                 static_cast<double>(std::min(1.0L, std::abs(mean)))};
  });
  for (const WeylValue& v : report.values) {
    report.max_modulus = std::max(report.max_modulus, v.modulus);
  }
  return report;
}

}  // namespace lacunary
