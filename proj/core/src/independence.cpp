#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <set>

#include "lacunary/error.hpp"
#include "lacunary/relations.hpp"

namespace lacunary {

namespace {

constexpr std::uint64_t kModulus = (std::uint64_t{1} << 61) - 1;
constexpr std::size_t kMaxSide = 8;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b) {
  const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  std::uint64_t lo = static_cast<std::uint64_t>(p & kModulus);
  std::uint64_t hi = static_cast<std::uint64_t>(p >> 61);
  std::uint64_t r = lo + hi;
  if (r >= kModulus) r -= kModulus;
  return r;
}

std::uint64_t add_mod(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = a + b;
  if (r >= kModulus) r -= kModulus;
  return r;
}

// One side of a relation class: positive weights, sorted descending.
struct Pattern {
  std::size_t m = 0;
  std::vector<int> left;
  std::vector<int> right;
  bool symmetric() const { return left == right; }
};

std::vector<Pattern> relation_patterns(unsigned s, const RelationOptions& options) {
  std::vector<Pattern> patterns;
  for (const Relation& r : enumerate_relations(s, options).up_to_symmetry()) {
    std::vector<int> pos;
    std::vector<int> neg;
    for (const int c : r.coefficients) {
      (c > 0 ? pos : neg).push_back(std::abs(c));
    }
    std::sort(pos.rbegin(), pos.rend());
    std::sort(neg.rbegin(), neg.rend());
    // Fewer terms on the left; ties broken towards the larger weight vector.
    if (neg.size() < pos.size() || (neg.size() == pos.size() && neg > pos)) {
      std::swap(pos, neg);
    }
    patterns.push_back(Pattern{r.length(), std::move(pos), std::move(neg)});
  }
  std::sort(patterns.begin(), patterns.end(), [](const Pattern& a, const Pattern& b) {
    if (a.m != b.m) return a.m < b.m;
    if (a.left != b.left) return a.left < b.left;
    return a.right < b.right;
  });
  patterns.erase(std::unique(patterns.begin(), patterns.end(),
                             [](const Pattern& a, const Pattern& b) {
                               return a.m == b.m && a.left == b.left && a.right == b.right;
                             }),
                 patterns.end());
  return patterns;
}

using Slots = std::array<std::uint32_t, kMaxSide>;

struct Entry {
  std::uint64_t key;
  Slots idx;
};

// Enumerates injective assignments of set indices to the weights of one side.
// Slots carrying equal weights take increasing indices, so each weighted sum
// is produced once.
class SideEnumerator {
 public:
  SideEnumerator(const std::vector<int>& weights, std::span<const std::uint64_t> residues)
      : weights_(weights), residues_(residues) {}

  long double tuple_count() const {
    const long double n = static_cast<long double>(residues_.size());
    long double total = 1;
    std::size_t run = 0;
    for (std::size_t i = 0; i < weights_.size(); ++i) {
      total *= (n - static_cast<long double>(i));
      run = (i > 0 && weights_[i] == weights_[i - 1]) ? run + 1 : 1;
      total /= static_cast<long double>(run);
    }
    return std::max<long double>(total, 0);
  }

  void for_each(const std::function<void(std::uint64_t, const Slots&)>& visit) const {
    Slots slots{};
    recurse(0, 0, slots, visit);
  }

 private:
  void recurse(std::size_t depth, std::uint64_t key, Slots& slots,
               const std::function<void(std::uint64_t, const Slots&)>& visit) const {
    if (depth == weights_.size()) {
      visit(key, slots);
      return;
    }
    const bool same_as_previous = depth > 0 && weights_[depth] == weights_[depth - 1];
    const std::size_t start = same_as_previous ? slots[depth - 1] + 1 : 0;
    const auto weight = static_cast<std::uint64_t>(weights_[depth]);
    for (std::size_t i = start; i < residues_.size(); ++i) {
      bool used = false;
      for (std::size_t d = 0; d < depth; ++d) {
        if (slots[d] == i) {
          used = true;
          break;
        }
      }
      if (used) continue;
      slots[depth] = static_cast<std::uint32_t>(i);
      recurse(depth + 1, add_mod(key, mul_mod(weight, residues_[i])), slots, visit);
    }
  }

  const std::vector<int>& weights_;
  std::span<const std::uint64_t> residues_;
};

class Searcher {
 public:
  Searcher(const IntegerSet& set, const IndependenceOptions& options)
      : set_(set), options_(options), small_(set.small_view()) {
    residues_.reserve(set.size());
    for (const BigInt& n : set.elements()) {
      residues_.push_back(mod_u64(n, kModulus));
    }
  }

  // Lexicographically smallest (left slots, right slots) witness for the
  // pattern, if any.
  std::optional<std::pair<Slots, Slots>> search(const Pattern& pattern) const {
    if (pattern.m > set_.size()) {
      return std::nullopt;
    }
    const SideEnumerator left(pattern.left, residues_);
    const SideEnumerator right(pattern.right, residues_);
    const long double biggest = std::max(left.tuple_count(), right.tuple_count());
    const auto passes = static_cast<std::uint64_t>(
        std::max<long double>(1, std::ceil(biggest / options_.max_entries_per_pass)));

    std::optional<std::pair<Slots, Slots>> best;
    std::vector<Entry> lhs;
    std::vector<Entry> rhs;
    for (std::uint64_t pass = 0; pass < passes; ++pass) {
      collect(left, pass, passes, lhs);
      if (!pattern.symmetric()) {
        collect(right, pass, passes, rhs);
      }
      const std::vector<Entry>& other = pattern.symmetric() ? lhs : rhs;
      scan(pattern, lhs, other, pattern.symmetric(), best);
    }
    return best;
  }

  Witness make_witness(const Pattern& pattern, const std::pair<Slots, Slots>& found) const {
    Witness w;
    for (std::size_t i = 0; i < pattern.left.size(); ++i) {
      w.coefficients.push_back(pattern.left[i]);
      w.elements.push_back(set_[found.first[i]]);
    }
    for (std::size_t i = 0; i < pattern.right.size(); ++i) {
      w.coefficients.push_back(-pattern.right[i]);
      w.elements.push_back(set_[found.second[i]]);
    }
    return w;
  }

 private:
  void collect(const SideEnumerator& side, std::uint64_t pass, std::uint64_t passes,
               std::vector<Entry>& out) const {
    out.clear();
    side.for_each([&](std::uint64_t key, const Slots& slots) {
      if (passes == 1 || key % passes == pass) {
        out.push_back(Entry{key, slots});
      }
    });
    std::sort(out.begin(), out.end(), [](const Entry& a, const Entry& b) {
      if (a.key != b.key) return a.key < b.key;
      return a.idx < b.idx;
    });
  }

  bool disjoint(const Pattern& pattern, const Slots& a, const Slots& b) const {
    for (std::size_t i = 0; i < pattern.left.size(); ++i) {
      for (std::size_t j = 0; j < pattern.right.size(); ++j) {
        if (a[i] == b[j]) return false;
      }
    }
    return true;
  }

  bool exactly_equal(const Pattern& pattern, const Slots& a, const Slots& b) const {
    if (small_) {
      const auto& v = *small_;
      __int128 lhs = 0;
      __int128 rhs = 0;
      for (std::size_t i = 0; i < pattern.left.size(); ++i) {
        lhs += static_cast<__int128>(pattern.left[i]) * v[a[i]];
      }
      for (std::size_t j = 0; j < pattern.right.size(); ++j) {
        rhs += static_cast<__int128>(pattern.right[j]) * v[b[j]];
      }
      return lhs == rhs;
    }
    BigInt lhs = 0;
    BigInt rhs = 0;
    for (std::size_t i = 0; i < pattern.left.size(); ++i) {
      lhs += pattern.left[i] * set_[a[i]];
    }
    for (std::size_t j = 0; j < pattern.right.size(); ++j) {
      rhs += pattern.right[j] * set_[b[j]];
    }
    return lhs == rhs;
  }

  static bool lex_less(const std::pair<Slots, Slots>& a, const std::pair<Slots, Slots>& b) {
    return a < b;
  }

  void scan(const Pattern& pattern, const std::vector<Entry>& lhs, const std::vector<Entry>& rhs,
            bool symmetric, std::optional<std::pair<Slots, Slots>>& best) const {
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < lhs.size() && j < rhs.size()) {
      if (lhs[i].key < rhs[j].key) {
        ++i;
        continue;
      }
      if (rhs[j].key < lhs[i].key) {
        ++j;
        continue;
      }
      const std::uint64_t key = lhs[i].key;
      std::size_t i_end = i;
      while (i_end < lhs.size() && lhs[i_end].key == key) ++i_end;
      std::size_t j_end = j;
      while (j_end < rhs.size() && rhs[j_end].key == key) ++j_end;

      bool found_in_run = false;
      for (std::size_t u = i; u < i_end && !found_in_run; ++u) {
        if (best && best->first < lhs[u].idx) break;
        const std::size_t v_start = symmetric ? u + 1 : j;
        for (std::size_t v = v_start; v < j_end; ++v) {
          if (!disjoint(pattern, lhs[u].idx, rhs[v].idx)) continue;
          if (!exactly_equal(pattern, lhs[u].idx, rhs[v].idx)) continue;
          const std::pair<Slots, Slots> candidate{lhs[u].idx, rhs[v].idx};
          if (!best || lex_less(candidate, *best)) {
            best = candidate;
          }
          found_in_run = true;
          break;
        }
      }
      i = i_end;
      j = j_end;
    }
  }

  const IntegerSet& set_;
  const IndependenceOptions& options_;
  std::optional<std::span<const std::int64_t>> small_;
  std::vector<std::uint64_t> residues_;
};

}  // namespace

IndependenceReport is_s_independent(const IntegerSet& set, unsigned s,
                                    const IndependenceOptions& options) {
  IndependenceReport report;
  report.s = s;
  if (s < 2 || set.size() < 3) {
    return report;
  }
  if (s > kMaxSide) {
    throw PreconditionError("is_s_independent: s above " + std::to_string(kMaxSide) +
                            " is not supported");
  }
  if (set.size() > std::numeric_limits<std::uint32_t>::max()) {
    throw PreconditionError("is_s_independent: set too large");
  }
  const Searcher searcher(set, options);
  for (const Pattern& pattern : relation_patterns(s, options.relations)) {
    if (const auto found = searcher.search(pattern)) {
      report.independent = false;
      report.witness = searcher.make_witness(pattern, *found);
      return report;
    }
  }
  return report;
}

}  // namespace lacunary
