#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lacunary/bigint.hpp"

namespace lacunary {

/// Strict weak order used for every IntegerSet: increasing |n|, and for a
/// tie between -n and n the negative element comes first.
bool abs_order_less(const BigInt& a, const BigInt& b);

/// A finite set of integers E = {n_1, n_2, ...} listed in increasing absolute
/// value. Immutable; copies share storage.
class IntegerSet {
 public:
  IntegerSet();

  /// Sorts into abs order and removes duplicates. The number of removed
  /// duplicates is kept as dropped_duplicates().
  static IntegerSet from_values(std::vector<BigInt> values, std::string label = {});

  /// Takes elements that are already strictly increasing in abs order.
  /// Throws PreconditionError otherwise.
  static IntegerSet from_sorted(std::vector<BigInt> elements, std::string label = {});

  const std::vector<BigInt>& elements() const { return data_->elements; }
  const BigInt& operator[](std::size_t i) const { return data_->elements[i]; }
  std::size_t size() const { return data_->elements.size(); }
  bool empty() const { return data_->elements.empty(); }
  const std::string& label() const { return data_->label; }
  std::size_t dropped_duplicates() const { return data_->dropped; }

  bool contains(const BigInt& n) const;
  bool all_nonnegative() const { return data_->all_nonnegative; }
  bool all_positive() const { return data_->all_positive; }

  /// Machine-word copy of the elements, present when all fit in int64.
  std::optional<std::span<const std::int64_t>> small_view() const;

  /// max |n|; throws PreconditionError on the empty set.
  BigInt max_abs() const;

  /// The elements at the given strictly increasing indices.
  IntegerSet subset(std::span<const std::size_t> indices, std::string label = {}) const;

  /// The first k elements {n_1, ..., n_k}.
  IntegerSet prefix(std::size_t k, std::string label = {}) const;

  IntegerSet with_label(std::string label) const;

  bool same_storage(const IntegerSet& other) const { return data_ == other.data_; }

  friend bool operator==(const IntegerSet& a, const IntegerSet& b) {
    return a.data_ == b.data_ || a.elements() == b.elements();
  }

 private:
  struct Data {
    std::vector<BigInt> elements;
    std::vector<std::int64_t> small;
    bool fits_small = true;
    bool all_nonnegative = true;
    bool all_positive = true;
    std::size_t dropped = 0;
    std::string label;
  };
  explicit IntegerSet(std::shared_ptr<const Data> data) : data_(std::move(data)) {}
  static std::shared_ptr<const Data> build(std::vector<BigInt> sorted, std::string label,
                                           std::size_t dropped);

  std::shared_ptr<const Data> data_;
};

// ---- generators -----------------------------------------------------------

/// {P(1), ..., P(k_max)} for P(k) = c_0 + c_1 k + c_2 k^2 + ...
/// (coefficients in ascending degree). Repeated values collapse and are
/// counted in dropped_duplicates(). Throws "degenerate polynomial" when P is
/// constant.
IntegerSet generate_polynomial(std::span<const BigInt> coefficients, std::uint64_t k_max);

/// All primes <= limit by a segmented sieve of Eratosthenes. Empty below 2.
std::vector<std::uint64_t> sieve_primes(std::uint64_t limit);
IntegerSet generate_primes(std::uint64_t limit);

/// {base^1, ..., base^k_max}, exact.
IntegerSet generate_geometric(const BigInt& base, std::uint64_t k_max);

/// All sums of j distinct elements of a strictly positive base set.
/// Refuses to materialize more than max_sums sums.
IntegerSet generate_sumset(const IntegerSet& base, std::size_t j,
                           std::size_t max_sums = 50'000'000);

/// The union of (2^{2^{2i}}, 2^{2^{2i}+1}] for 0 <= i < levels (levels <= 3):
/// a set of polynomial growth whose distribution function is flat on long
/// stretches. Levels beyond 3 do not fit in memory.
IntegerSet generate_sparse_blocks(unsigned levels);

// ---- distribution function and growth ---------------------------------------

/// E[t] = |E ∩ [-t, t]|.
std::size_t distribution_function(const IntegerSet& set, const BigInt& t);

struct GrowthOptions {
  double eta = 0.05;
  std::size_t samples = 32;
  /// Defaults to [max(2, floor(sqrt(T))), floor(T/2)] with T = max|n|.
  std::optional<BigInt> t_min;
  std::optional<BigInt> t_max;
  std::size_t min_points_in_range = 16;
};

struct GrowthReport {
  double epsilon_hat = 0.0;
  double c_hat = 0.0;
  bool is_polynomial = false;
  bool is_regular = false;
  BigInt t_min;
  BigInt t_max;
  double eta = 0.0;
  std::size_t samples = 0;
};

/// Finite-range fit of E[t] >= t^eps and E[2t] >= c E[t] over log-spaced
/// sample points t in the fit range. Throws "insufficient data" when fewer
/// than min_points_in_range elements fall in the range.
GrowthReport classify_growth(const IntegerSet& set, const GrowthOptions& options = {});

// ---- text interop -----------------------------------------------------------

/// One integer per line; blank lines and lines starting with '#' are skipped.
IntegerSet read_integer_lines(std::istream& in, std::string label = {});
void write_integer_lines(std::ostream& out, const IntegerSet& set);

}  // namespace lacunary
