#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace lacunary {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Parses an optionally signed decimal integer. Throws ParseError.
BigInt parse_bigint(std::string_view text);

std::string to_decimal(const BigInt& value);

/// Natural logarithm of |value| from its bit length and top 64 bits, so it
/// stays accurate for values far beyond the range of long double.
/// Throws PreconditionError for zero.
long double log_abs(const BigInt& value);

BigInt pow2(std::uint64_t exponent);

std::optional<std::int64_t> to_int64(const BigInt& value);

/// Least nonnegative residue of value modulo q (q > 0).
std::uint64_t mod_u64(const BigInt& value, std::uint64_t q);

/// Exact rational value of a finite double.
BigRational exact_rational(double value);

std::string to_string(const BigRational& value);

}  // namespace lacunary
