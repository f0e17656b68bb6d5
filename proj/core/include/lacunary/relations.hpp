#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "lacunary/bigint.hpp"
#include "lacunary/integer_set.hpp"

namespace lacunary {

/// A coefficient vector zeta in (Z*)^m with sum zero.
struct Relation {
  std::vector<int> coefficients;

  std::size_t length() const { return coefficients.size(); }
  int weight() const;  // sum of |zeta_i|
  friend auto operator<=>(const Relation&, const Relation&) = default;
};

struct RelationOptions {
  unsigned s_max = 4;
};

/// Z_s = union over 3 <= m <= 2s of the ordered tuples zeta in (Z*)^m with
/// sum(zeta) = 0 and sum|zeta_i| <= 2s. The m = 2 identity relations are
/// excluded.
class RelationSet {
 public:
  RelationSet(unsigned s, std::map<std::size_t, std::vector<Relation>> by_length);

  unsigned s() const { return s_; }
  /// C(s): the number of ordered relations.
  std::size_t count() const;
  std::size_t count(std::size_t m) const;
  const std::map<std::size_t, std::vector<Relation>>& by_length() const { return by_length_; }
  /// All relations, sorted by (length, coefficients).
  std::vector<Relation> canonical() const;
  /// One representative per class under coordinate permutation and global
  /// negation, for reporting.
  std::vector<Relation> up_to_symmetry() const;

 private:
  unsigned s_;
  std::map<std::size_t, std::vector<Relation>> by_length_;
};

/// sum_{m=3}^{2s} 2^m C(2s, m): an upper bound on C(s) that is cheap to
/// evaluate, used in the "relation explosion" message.
long double relation_count_bound(unsigned s);

RelationSet enumerate_relations(unsigned s, const RelationOptions& options = {});

/// C(s), cached per s.
std::size_t relation_count(unsigned s);

struct Witness {
  std::vector<int> coefficients;
  std::vector<BigInt> elements;
};

struct IndependenceReport {
  unsigned s = 0;
  bool independent = true;
  std::optional<Witness> witness;
};

struct IndependenceOptions {
  RelationOptions relations{};
  /// Upper bound on hashed partial sums held in memory at once; larger
  /// searches run in several passes over the key space.
  std::size_t max_entries_per_pass = std::size_t{1} << 21;
};

/// Decides whether sum zeta_i q_i != 0 for every relation in Z_s and every
/// tuple of distinct q_i in the set. The search is a meet-in-the-middle over
/// the positive and negative halves of each relation; candidate matches are
/// verified exactly. Among witnesses, the one returned belongs to the first
/// relation class in (length, pattern) order and is the lexicographically
/// smallest index tuple within it, so the answer does not depend on the pass
/// layout.
IndependenceReport is_s_independent(const IntegerSet& set, unsigned s,
                                    const IndependenceOptions& options = {});

struct RepresentationCounts {
  unsigned s = 0;
  /// r_s(n) for every n with r_s(n) > 0.
  std::map<std::int64_t, std::uint64_t> counts;
  /// M = sum_n r_s(n)^2.
  BigInt moment;
};

/// r_s(n) = number of ordered s-tuples from the set summing to n. The set must
/// be nonnegative and s * max(E) must stay below max_range.
RepresentationCounts count_representations(const IntegerSet& set, unsigned s,
                                            std::uint64_t max_range = std::uint64_t{1} << 26);

/// C(s) ell^{2s} / set_size; may exceed 1.
double dependence_probability_bound(unsigned s, std::uint64_t ell, std::uint64_t set_size);

}  // namespace lacunary
