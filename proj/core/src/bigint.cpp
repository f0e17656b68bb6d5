#include "lacunary/bigint.hpp"

#include <cmath>
#include <limits>

#include "lacunary/error.hpp"

namespace lacunary {

BigInt parse_bigint(std::string_view text) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
    negative = text[pos] == '-';
    ++pos;
  }
  if (pos == text.size()) {
    throw ParseError("not an integer: '" + std::string(text) + "'");
  }
  BigInt value = 0;
  for (; pos < text.size(); ++pos) {
    const char c = text[pos];
    if (c < '0' || c > '9') {
      throw ParseError("not an integer: '" + std::string(text) + "'");
    }
    value *= 10;
    value += c - '0';
  }
  return negative ? BigInt(-value) : value;
}

std::string to_decimal(const BigInt& value) { return value.str(); }

long double log_abs(const BigInt& value) {
  if (value == 0) {
    throw PreconditionError("log_abs: logarithm of zero");
  }
  const BigInt magnitude = abs(value);
  const std::size_t top_bit = boost::multiprecision::msb(magnitude);
  if (top_bit < 64) {
    return std::log(static_cast<long double>(static_cast<std::uint64_t>(magnitude)));
  }
  const std::size_t shift = top_bit - 63;
  const auto head = static_cast<std::uint64_t>(magnitude >> shift);
  return std::log(static_cast<long double>(head)) +
         static_cast<long double>(shift) * std::log(2.0L);
}

BigInt pow2(std::uint64_t exponent) {
  BigInt value = 1;
  value <<= exponent;
  return value;
}

std::optional<std::int64_t> to_int64(const BigInt& value) {
  if (value > std::numeric_limits<std::int64_t>::max() ||
      value < std::numeric_limits<std::int64_t>::min()) {
    return std::nullopt;
  }
  return static_cast<std::int64_t>(value);
}

std::uint64_t mod_u64(const BigInt& value, std::uint64_t q) {
  if (q == 0) {
    throw PreconditionError("mod_u64: zero modulus");
  }
  BigInt r = value % q;
  if (r < 0) {
    r += q;
  }
  return static_cast<std::uint64_t>(r);
}

BigRational exact_rational(double value) {
  if (!std::isfinite(value)) {
    throw PreconditionError("exact_rational: non-finite value");
  }
  if (value == 0.0) {
    return BigRational(0);
  }
  int exponent = 0;
  const double mantissa = std::frexp(value, &exponent);
  // mantissa * 2^53 is an exact integer for IEEE doubles.
  const auto scaled = static_cast<std::int64_t>(std::ldexp(mantissa, 53));
  exponent -= 53;
  BigInt numerator = scaled;
  BigInt denominator = 1;
  if (exponent >= 0) {
    numerator <<= exponent;
  } else {
    denominator <<= -exponent;
  }
  return BigRational(numerator, denominator);
}

std::string to_string(const BigRational& value) {
  const BigInt num = numerator(value);
  const BigInt den = denominator(value);
  if (den == 1) {
    return num.str();
  }
  return num.str() + "/" + den.str();
}

}  // namespace lacunary
