#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lacunary/integer_set.hpp"

namespace lacunary {

/// A point t = exp(2 pi i theta) of the circle, theta measured in turns.
/// Rational points theta = a/q are evaluated exactly through n*a mod q;
/// other points carry theta as a long double in [0, 1).
class CirclePoint {
 public:
  /// theta = a/q reduced to lowest terms with 0 <= a < q. Throws on q = 0.
  static CirclePoint rational(std::int64_t a, std::uint64_t q);
  /// theta = x mod 1.
  static CirclePoint turns(long double x);

  bool is_rational() const { return rational_; }
  std::uint64_t numerator() const { return a_; }
  std::uint64_t denominator() const { return q_; }
  long double theta() const { return theta_; }

  /// "a/q" or the decimal angle in turns.
  std::string describe() const;

  friend bool operator==(const CirclePoint&, const CirclePoint&) = default;

 private:
  CirclePoint() = default;
  bool rational_ = false;
  std::uint64_t a_ = 0;
  std::uint64_t q_ = 1;
  long double theta_ = 0;
};

/// Circular distance in turns between theta and b/r, minimized over b.
long double distance_to_rationals(long double theta, std::uint64_t max_denominator);

struct WeylValue {
  CirclePoint point;
  /// sum_{j <= k} e_{n_j}(t)
  std::complex<long double> sum;
  /// f_k(t) = sum / k
  std::complex<double> mean;
  /// |f_k(t)|, clamped to 1
  double modulus = 0.0;
};

struct WeylReport {
  std::size_t k = 0;
  std::vector<WeylValue> values;
  double max_modulus = 0.0;
};

/// f_k(t) = (1/k) sum_{j<=k} exp(2 pi i n_j theta) at every point.
WeylReport weyl_means(const IntegerSet& set, std::size_t k, std::span<const CirclePoint> points,
                      unsigned threads = 1);

/// Running sums sum_{j <= k} e_{n_j}(t) for every k in ks (increasing, each
/// <= |E|), at one point. Entry i belongs to ks[i].
std::vector<std::complex<long double>> weyl_sums(const IntegerSet& set,
                                                 std::span<const std::size_t> ks,
                                                 const CirclePoint& point);

/// Phase evaluator for one circle point; caches the reduction data.
class PhaseEvaluator {
 public:
  explicit PhaseEvaluator(const CirclePoint& point);
  /// exp(2 pi i n theta).
  std::complex<long double> operator()(const BigInt& n) const;
  std::complex<long double> operator()(std::int64_t n) const;

 private:
  std::complex<long double> from_residue(std::uint64_t r) const;
  std::complex<long double> from_fraction(unsigned __int128 r) const;

  CirclePoint point_;
  std::vector<std::complex<long double>> roots_;
  // theta = mantissa * 2^-shift
  std::uint64_t mantissa_ = 0;
  unsigned shift_ = 0;
};

}  // namespace lacunary
