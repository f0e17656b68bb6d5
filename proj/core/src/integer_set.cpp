#include "lacunary/integer_set.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <string_view>

#include "lacunary/error.hpp"

namespace lacunary {

bool abs_order_less(const BigInt& a, const BigInt& b) {
  const int sa = a.sign();
  const int sb = b.sign();
  // Compare magnitudes without allocating.
  int cmp;
  if (sa >= 0 && sb >= 0) {
    cmp = a.compare(b);
  } else if (sa < 0 && sb < 0) {
    cmp = b.compare(a);
  } else {
    cmp = (sa < 0 ? BigInt(-a) : a).compare(sb < 0 ? BigInt(-b) : b);
  }
  if (cmp != 0) {
    return cmp < 0;
  }
  return sa < sb;
}

IntegerSet::IntegerSet() : data_(build({}, {}, 0)) {}

std::shared_ptr<const IntegerSet::Data> IntegerSet::build(std::vector<BigInt> sorted,
                                                          std::string label,
                                                          std::size_t dropped) {
  auto data = std::make_shared<Data>();
  data->label = std::move(label);
  data->dropped = dropped;
  data->small.reserve(sorted.size());
  for (const BigInt& n : sorted) {
    if (n.sign() < 0) {
      data->all_nonnegative = false;
    }
    if (n.sign() <= 0) {
      data->all_positive = false;
    }
    if (data->fits_small) {
      if (auto v = to_int64(n)) {
        data->small.push_back(*v);
      } else {
        data->fits_small = false;
        data->small.clear();
        data->small.shrink_to_fit();
      }
    }
  }
  data->elements = std::move(sorted);
  return data;
}

IntegerSet IntegerSet::from_values(std::vector<BigInt> values, std::string label) {
  std::sort(values.begin(), values.end(), abs_order_less);
  const auto last = std::unique(values.begin(), values.end());
  const auto dropped = static_cast<std::size_t>(values.end() - last);
  values.erase(last, values.end());
  return IntegerSet(build(std::move(values), std::move(label), dropped));
}

IntegerSet IntegerSet::from_sorted(std::vector<BigInt> elements, std::string label) {
  for (std::size_t i = 1; i < elements.size(); ++i) {
    if (!abs_order_less(elements[i - 1], elements[i])) {
      throw PreconditionError("IntegerSet::from_sorted: elements not strictly increasing in |n|");
    }
  }
  return IntegerSet(build(std::move(elements), std::move(label), 0));
}

bool IntegerSet::contains(const BigInt& n) const {
  return std::binary_search(data_->elements.begin(), data_->elements.end(), n, abs_order_less);
}

std::optional<std::span<const std::int64_t>> IntegerSet::small_view() const {
  if (!data_->fits_small) {
    return std::nullopt;
  }
  return std::span<const std::int64_t>(data_->small);
}

BigInt IntegerSet::max_abs() const {
  if (empty()) {
    throw PreconditionError("max_abs of an empty set");
  }
  return abs(data_->elements.back());
}

IntegerSet IntegerSet::subset(std::span<const std::size_t> indices, std::string label) const {
  std::vector<BigInt> picked;
  picked.reserve(indices.size());
  std::size_t previous = 0;
  for (std::size_t pos = 0; pos < indices.size(); ++pos) {
    const std::size_t i = indices[pos];
    if (i >= size() || (pos > 0 && i <= previous)) {
      throw PreconditionError("IntegerSet::subset: indices must be increasing and in range");
    }
    previous = i;
    picked.push_back(data_->elements[i]);
  }
  return IntegerSet(build(std::move(picked), std::move(label), 0));
}

IntegerSet IntegerSet::prefix(std::size_t k, std::string label) const {
  if (k > size()) {
    throw PreconditionError("IntegerSet::prefix: k exceeds |E|");
  }
  std::vector<BigInt> head(data_->elements.begin(),
                           data_->elements.begin() + static_cast<std::ptrdiff_t>(k));
  return IntegerSet(build(std::move(head), std::move(label), 0));
}

IntegerSet IntegerSet::with_label(std::string label) const {
  auto data = std::make_shared<Data>(*data_);
  data->label = std::move(label);
  return IntegerSet(std::move(data));
}

// ---- generators -----------------------------------------------------------

IntegerSet generate_polynomial(std::span<const BigInt> coefficients, std::uint64_t k_max) {
  const bool nonconstant =
      std::any_of(coefficients.begin() + std::min<std::size_t>(1, coefficients.size()),
                  coefficients.end(), [](const BigInt& c) { return c != 0; });
  if (!nonconstant) {
    throw PreconditionError("degenerate polynomial");
  }
  if (k_max == 0) {
    throw PreconditionError("generate_polynomial: k_max must be positive");
  }
  std::string label = "polynomial[";
  for (std::size_t i = 0; i < coefficients.size(); ++i) {
    label += (i ? "," : "") + coefficients[i].str();
  }
  label += "]";

  std::vector<BigInt> values;
  values.reserve(k_max);
  for (std::uint64_t k = 1; k <= k_max; ++k) {
    BigInt acc = 0;
    for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) {
      acc *= k;
      acc += *it;
    }
    values.push_back(std::move(acc));
  }
  return IntegerSet::from_values(std::move(values), std::move(label));
}

std::vector<std::uint64_t> sieve_primes(std::uint64_t limit) {
  std::vector<std::uint64_t> primes;
  if (limit < 2) {
    return primes;
  }
  primes.push_back(2);
  if (limit < 3) {
    return primes;
  }
  const auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(limit))) + 1;

  // Odd base primes up to sqrt(limit) by a plain sieve.
  std::vector<bool> small(root + 1, true);
  std::vector<std::uint64_t> base;
  for (std::uint64_t i = 3; i <= root; i += 2) {
    if (!small[i]) {
      continue;
    }
    base.push_back(i);
    for (std::uint64_t j = i * i; j <= root; j += 2 * i) {
      small[j] = false;
    }
  }

  // Segments over odd numbers only: slot i stands for low + 2i.
  constexpr std::uint64_t kSegmentSlots = 1 << 15;
  std::vector<char> segment(kSegmentSlots);
  std::vector<std::uint64_t> next(base.size());
  for (std::size_t b = 0; b < base.size(); ++b) {
    next[b] = base[b] * base[b];
  }
  for (std::uint64_t low = 3; low <= limit; low += 2 * kSegmentSlots) {
    const std::uint64_t high = std::min(limit, low + 2 * kSegmentSlots - 1);
    const std::uint64_t slots = (high - low) / 2 + 1;
    std::fill(segment.begin(), segment.begin() + static_cast<std::ptrdiff_t>(slots), 1);
    for (std::size_t b = 0; b < base.size(); ++b) {
      const std::uint64_t p = base[b];
      std::uint64_t m = next[b];
      for (; m <= high; m += 2 * p) {
        segment[(m - low) / 2] = 0;
      }
      next[b] = m;
    }
    for (std::uint64_t i = 0; i < slots; ++i) {
      if (segment[i]) {
        primes.push_back(low + 2 * i);
      }
    }
  }
  return primes;
}

IntegerSet generate_primes(std::uint64_t limit) {
  const auto primes = sieve_primes(limit);
  std::vector<BigInt> values(primes.begin(), primes.end());
  return IntegerSet::from_sorted(std::move(values), "primes<=" + std::to_string(limit));
}

IntegerSet generate_geometric(const BigInt& base, std::uint64_t k_max) {
  if (base < 2) {
    throw PreconditionError("generate_geometric: base must be >= 2");
  }
  std::vector<BigInt> values;
  values.reserve(k_max);
  BigInt power = 1;
  for (std::uint64_t k = 1; k <= k_max; ++k) {
    power *= base;
    values.push_back(power);
  }
  return IntegerSet::from_sorted(std::move(values),
                                 "geometric[" + base.str() + "]^1.." + std::to_string(k_max));
}

IntegerSet generate_sumset(const IntegerSet& base, std::size_t j, std::size_t max_sums) {
  const std::size_t n = base.size();
  if (j == 0) {
    throw PreconditionError("generate_sumset: j must be positive");
  }
  if (j > n) {
    throw PreconditionError("generate_sumset: j exceeds the size of the base set");
  }
  if (!base.all_positive()) {
    throw PreconditionError("generate_sumset: base set must be strictly positive");
  }
  // C(n, j) with saturation.
  long double combos = 1;
  for (std::size_t i = 0; i < j; ++i) {
    combos = combos * static_cast<long double>(n - i) / static_cast<long double>(i + 1);
  }
  if (combos > static_cast<long double>(max_sums)) {
    throw PreconditionError("generate_sumset: C(|base|, j) exceeds the configured limit");
  }

  std::vector<BigInt> sums;
  sums.reserve(static_cast<std::size_t>(combos));
  std::vector<std::size_t> pick(j);
  for (std::size_t i = 0; i < j; ++i) {
    pick[i] = i;
  }
  while (true) {
    BigInt total = 0;
    for (const std::size_t i : pick) {
      total += base[i];
    }
    sums.push_back(std::move(total));
    // Advance to the next j-combination in lexicographic order.
    std::size_t pos = j;
    while (pos > 0 && pick[pos - 1] == n - j + (pos - 1)) {
      --pos;
    }
    if (pos == 0) {
      break;
    }
    ++pick[pos - 1];
    for (std::size_t i = pos; i < j; ++i) {
      pick[i] = pick[i - 1] + 1;
    }
  }
  std::string label = "sumset[" + std::to_string(j) + "](" + base.label() + ")";
  return IntegerSet::from_values(std::move(sums), std::move(label));
}

IntegerSet generate_sparse_blocks(unsigned levels) {
  if (levels > 3) {
    throw PreconditionError("generate_sparse_blocks: at most 3 levels fit in memory");
  }
  std::vector<BigInt> values;
  for (unsigned i = 0; i < levels; ++i) {
    const std::uint64_t e = std::uint64_t{1} << (2 * i);  // 2^{2i}
    const BigInt lo = pow2(e);
    const BigInt hi = pow2(e + 1);
    if (hi - lo > 10'000'000) {
      throw PreconditionError("generate_sparse_blocks: level too large");
    }
    for (BigInt n = lo + 1; n <= hi; ++n) {
      values.push_back(n);
    }
  }
  return IntegerSet::from_sorted(std::move(values), "sparse_blocks[" + std::to_string(levels) + "]");
}

// ---- distribution function ----------------------------------------------------

std::size_t distribution_function(const IntegerSet& set, const BigInt& t) {
  if (t < 0) {
    return 0;
  }
  const auto& elems = set.elements();
  const auto it = std::partition_point(elems.begin(), elems.end(), [&](const BigInt& n) {
    return (n.sign() < 0 ? BigInt(-n) : n) <= t;
  });
  return static_cast<std::size_t>(it - elems.begin());
}

// ---- text interop ---------------------------------------------------------------

IntegerSet read_integer_lines(std::istream& in, std::string label) {
  std::vector<BigInt> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    while (!view.empty() && std::isspace(static_cast<unsigned char>(view.front()))) {
      view.remove_prefix(1);
    }
    while (!view.empty() && std::isspace(static_cast<unsigned char>(view.back()))) {
      view.remove_suffix(1);
    }
    if (view.empty() || view.front() == '#') {
      continue;
    }
    try {
      values.push_back(parse_bigint(view));
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return IntegerSet::from_values(std::move(values), std::move(label));
}

void write_integer_lines(std::ostream& out, const IntegerSet& set) {
  for (const BigInt& n : set.elements()) {
    out << n << '\n';
  }
}

}  // namespace lacunary
