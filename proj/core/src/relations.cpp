#include "lacunary/relations.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <set>

#include "lacunary/error.hpp"

namespace lacunary {

int Relation::weight() const {
  int w = 0;
  for (const int c : coefficients) {
    w += std::abs(c);
  }
  return w;
}

RelationSet::RelationSet(unsigned s, std::map<std::size_t, std::vector<Relation>> by_length)
    : s_(s), by_length_(std::move(by_length)) {}

std::size_t RelationSet::count() const {
  std::size_t total = 0;
  for (const auto& [m, relations] : by_length_) {
    total += relations.size();
  }
  return total;
}

std::size_t RelationSet::count(std::size_t m) const {
  const auto it = by_length_.find(m);
  return it == by_length_.end() ? 0 : it->second.size();
}

std::vector<Relation> RelationSet::canonical() const {
  std::vector<Relation> all;
  for (const auto& [m, relations] : by_length_) {
    all.insert(all.end(), relations.begin(), relations.end());
  }
  std::sort(all.begin(), all.end(), [](const Relation& a, const Relation& b) {
    if (a.length() != b.length()) return a.length() < b.length();
    return a.coefficients < b.coefficients;
  });
  return all;
}

std::vector<Relation> RelationSet::up_to_symmetry() const {
  std::set<std::vector<int>> seen;
  std::vector<Relation> representatives;
  for (const Relation& r : canonical()) {
    std::vector<int> sorted = r.coefficients;
    std::vector<int> negated = r.coefficients;
    for (int& c : negated) c = -c;
    std::sort(sorted.begin(), sorted.end());
    std::sort(negated.begin(), negated.end());
    const auto key = std::min(sorted, negated);
    if (seen.insert(key).second) {
      representatives.push_back(Relation{key});
    }
  }
  return representatives;
}

long double relation_count_bound(unsigned s) {
  long double total = 0;
  const unsigned n = 2 * s;
  for (unsigned m = 3; m <= n; ++m) {
    long double binom = 1;
    for (unsigned i = 0; i < m; ++i) {
      binom = binom * (n - i) / (i + 1);
    }
    total += std::pow(2.0L, static_cast<long double>(m)) * binom;
  }
  return total;
}

namespace {

void extend(std::vector<int>& prefix, int budget, int running_sum, std::size_t m,
            std::vector<Relation>& out) {
  if (prefix.size() + 1 == m) {
    // The last coordinate is forced by the zero-sum condition.
    const int last = -running_sum;
    if (last != 0 && std::abs(last) <= budget) {
      prefix.push_back(last);
      out.push_back(Relation{prefix});
      prefix.pop_back();
    }
    return;
  }
  // Every remaining slot needs |zeta_i| >= 1.
  const int remaining_slots = static_cast<int>(m - prefix.size() - 1);
  for (int c = -budget; c <= budget; ++c) {
    if (c == 0 || std::abs(c) + remaining_slots > budget) {
      continue;
    }
    prefix.push_back(c);
    extend(prefix, budget - std::abs(c), running_sum + c, m, out);
    prefix.pop_back();
  }
}

}  // namespace

RelationSet enumerate_relations(unsigned s, const RelationOptions& options) {
  if (s == 0) {
    throw PreconditionError("enumerate_relations: s must be >= 1");
  }
  if (s > options.s_max) {
    throw PreconditionError("relation explosion: s = " + std::to_string(s) + " exceeds s_max = " +
                            std::to_string(options.s_max) + "; up to " +
                            std::to_string(static_cast<double>(relation_count_bound(s))) +
                            " relations");
  }
  std::map<std::size_t, std::vector<Relation>> by_length;
  for (std::size_t m = 3; m <= 2 * s; ++m) {
    std::vector<Relation> relations;
    std::vector<int> prefix;
    extend(prefix, static_cast<int>(2 * s), 0, m, relations);
    if (!relations.empty()) {
      by_length.emplace(m, std::move(relations));
    }
  }
  return RelationSet(s, std::move(by_length));
}

std::size_t relation_count(unsigned s) {
  static std::mutex mutex;
  static std::map<unsigned, std::size_t> cache;
  std::lock_guard lock(mutex);
  const auto it = cache.find(s);
  if (it != cache.end()) {
    return it->second;
  }
  RelationOptions options;
  options.s_max = std::max(options.s_max, s);
  const std::size_t count = enumerate_relations(s, options).count();
  cache.emplace(s, count);
  return count;
}

double dependence_probability_bound(unsigned s, std::uint64_t ell, std::uint64_t set_size) {
  if (s < 2) {
    throw PreconditionError("dependence_probability_bound: s must be >= 2");
  }
  if (ell > set_size) {
    throw PreconditionError("dependence_probability_bound: ell exceeds the set size");
  }
  if (ell == 0) {
    return 0.0;
  }
  const long double c = static_cast<long double>(relation_count(s));
  return static_cast<double>(c * std::pow(static_cast<long double>(ell), 2.0L * s) /
                             static_cast<long double>(set_size));
}

RepresentationCounts count_representations(const IntegerSet& set, unsigned s,
                                            std::uint64_t max_range) {
  if (s == 0) {
    throw PreconditionError("count_representations: s must be >= 1");
  }
  if (!set.all_nonnegative()) {
    throw PreconditionError("count_representations: elements must be nonnegative");
  }
  RepresentationCounts result;
  result.s = s;
  if (set.empty()) {
    return result;
  }
  const auto small = set.small_view();
  const BigInt range = set.max_abs() * s;
  if (!small || range >= max_range) {
    throw PreconditionError("count_representations: s * max(E) exceeds the convolution range");
  }
  if (std::pow(static_cast<long double>(set.size()), static_cast<long double>(s)) >= 1.8e19L) {
    throw PreconditionError("count_representations: |E|^s overflows the counters");
  }
  const auto span = static_cast<std::size_t>(range) + 1;
  std::vector<std::uint64_t> current(span, 0);
  std::vector<std::uint64_t> next(span, 0);
  for (const std::int64_t e : *small) {
    current[static_cast<std::size_t>(e)] = 1;
  }
  std::size_t top = static_cast<std::size_t>(small->back());
  const std::size_t element_max = top;
  for (unsigned step = 1; step < s; ++step) {
    std::fill(next.begin(), next.begin() + static_cast<std::ptrdiff_t>(top + element_max + 1), 0);
    for (std::size_t n = 0; n <= top; ++n) {
      if (current[n] == 0) continue;
      for (const std::int64_t e : *small) {
        next[n + static_cast<std::size_t>(e)] += current[n];
      }
    }
    top += element_max;
    std::swap(current, next);
  }
  for (std::size_t n = 0; n <= top; ++n) {
    if (current[n] == 0) continue;
    result.counts.emplace(static_cast<std::int64_t>(n), current[n]);
    BigInt r = current[n];
    result.moment += r * r;
  }
  return result;
}

}  // namespace lacunary
