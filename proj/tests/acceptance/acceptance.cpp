// Acceptance suite: one PASS/FAIL line per criterion.
//
//   lacunary_acceptance [--only NAME]... [--known-failure NAME]... [--out DIR]
//
// Exits 0 when every failing criterion was listed with --known-failure.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "../oracles.hpp"
#include "lacunary/bernstein.hpp"
#include "lacunary/circle.hpp"
#include "lacunary/equidistribution.hpp"
#include "lacunary/experiment.hpp"
#include "lacunary/grid.hpp"
#include "lacunary/pipeline.hpp"
#include "lacunary/relations.hpp"
#include "lacunary/rng.hpp"
#include "lacunary/selection.hpp"

namespace {

using namespace lacunary;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double x) {
  std::ostringstream out;
  out << x;
  return out.str();
}

IntegerSet from_ints(const std::vector<std::int64_t>& values) {
  std::vector<BigInt> big;
  for (const auto v : values) big.emplace_back(v);
  return IntegerSet::from_values(std::move(big));
}

Outcome relation_enumeration() {
  const auto start = Clock::now();
  const std::size_t c1 = enumerate_relations(1).count();
  const RelationSet z2 = enumerate_relations(2);
  const double elapsed = seconds_since(start);
  const auto brute = oracle::relations(2);
  bool match = brute.size() == 2;
  for (const auto& [m, list] : brute) match = match && z2.count(m) == list.size();
  bool empty_beyond = true;
  for (unsigned s = 1; s <= 3; ++s) {
    const RelationSet z = enumerate_relations(s);
    for (const auto& [m, list] : z.by_length()) {
      empty_beyond = empty_beyond && (m <= 2 * s || list.empty());
    }
  }
  const bool pass = c1 == 0 && z2.count() == 12 && z2.count(3) == 6 && z2.count(4) == 6 &&
                    match && empty_beyond && elapsed < 1.0;
  return {pass, "C(1)=" + std::to_string(c1) + " C(2)=" + std::to_string(z2.count()) + " (" +
                    std::to_string(z2.count(3)) + " at m=3, " + std::to_string(z2.count(4)) +
                    " at m=4), brute force " + (match ? "agrees" : "differs") + ", " +
                    fmt(elapsed) + " s"};
}

Outcome independence_oracle_equivalence() {
  const auto start = Clock::now();
  std::size_t subsets = 0;
  std::size_t disagreements = 0;
  std::vector<std::int64_t> current;
  auto visit = [&](auto&& self, std::int64_t next) -> void {
    for (const unsigned s : {2u, 3u}) {
      ++subsets;
      if (is_s_independent(from_ints(current), s).independent != oracle::independent(current, s)) {
        ++disagreements;
      }
    }
    if (current.size() == 6) return;
    for (std::int64_t v = next; v <= 20; ++v) {
      current.push_back(v);
      self(self, v + 1);
      current.pop_back();
    }
  };
  visit(visit, 1);
  const double elapsed = seconds_since(start);
  return {disagreements == 0 && elapsed < 300,
          std::to_string(subsets) + " (subset, s) pairs, " + std::to_string(disagreements) +
              " disagreements, " + fmt(elapsed) + " s"};
}

Outcome moment_identity() {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::int64_t> pick(0, 1 << 16);
  std::size_t certified = 0;
  std::size_t wrong = 0;
  while (certified < 200) {
    const std::size_t size = 4 + certified % 20;
    std::set<std::int64_t> chosen;
    while (chosen.size() < size) chosen.insert(pick(rng));
    const std::vector<std::int64_t> values(chosen.begin(), chosen.end());
    const IntegerSet e = from_ints(values);
    if (!is_s_independent(e, 2).independent) continue;
    ++certified;
    const BigInt expected = 2 * BigInt(size) * BigInt(size) - BigInt(size);
    const BigInt m = count_representations(e, 2).moment;
    if (m != expected || m != BigInt(oracle::second_moment(values))) ++wrong;
  }
  const BigInt small = count_representations(from_ints({0, 1, 3}), 2).moment;
  return {wrong == 0 && small == 15,
          std::to_string(certified) + " certified sets, " + std::to_string(wrong) +
              " mismatches; M({0,1,3}) = " + to_decimal(small)};
}

Outcome dependence_bound() {
  const auto start = Clock::now();
  std::vector<BigInt> range;
  for (int n = 1; n <= 4096; ++n) range.emplace_back(n);
  const IntegerSet e = IntegerSet::from_sorted(range);
  bool pass = true;
  std::string detail;
  for (const std::uint64_t ell : {2, 3, 4}) {
    const DependenceEstimate d = monte_carlo_dependence(e, ell, 2, 2000, 100 + ell, 0);
    const double limit = d.bound + 3 * d.interval.half_width();
    pass = pass && d.frequency <= limit;
    detail += "ell=" + std::to_string(ell) + ": " + fmt(d.frequency) + " <= " + fmt(limit) + "; ";
  }
  const double elapsed = seconds_since(start);
  return {pass && elapsed < 600, detail + fmt(elapsed) + " s"};
}

Outcome bernstein_tail() {
  const auto start = Clock::now();
  bool pass = true;
  std::string detail;
  auto suite = [&](std::size_t n, BernsteinSpec spec, std::vector<double> a) {
    const BernsteinReport r = monte_carlo_bernstein(n, spec, a, 100000, 77, 0);
    for (const auto& cell : r.cells) {
      pass = pass && cell.within_bound;
      detail += to_string(spec.kind) + " a=" + fmt(cell.a) + ": " + fmt(cell.frequency) +
                " <= " + fmt(cell.bound) + "; ";
    }
  };
  suite(100, BernsteinSpec{}, {20, 40, 60});
  BernsteinSpec selector;
  selector.kind = BernsteinDistribution::centered_selector;
  selector.delta = 0.1;
  suite(1000, selector, {30, 60, 90});
  const double elapsed = seconds_since(start);
  return {pass && elapsed < 300, detail + fmt(elapsed) + " s"};
}

Outcome grid_bound() {
  std::mt19937_64 rng(31);
  std::size_t violations = 0;
  double worst = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::int64_t n = 1 + static_cast<std::int64_t>(rng() % 256);
    std::vector<std::int64_t> f;
    std::vector<double> c;
    SparsePolynomial p;
    for (std::int64_t m = (trial % 2 ? -n : 0); m <= n; ++m) {
      if (trial % 2 && rng() % 3 != 0 && m != n) continue;
      const double sign = (rng() & 1) ? 1.0 : -1.0;
      f.push_back(m);
      c.push_back(sign);
      p.add(BigInt(m), sign);
    }
    const GridSupNorm coarse = sup_norm_via_grid(p);
    const double fine = oracle::sup_abs(oracle::evaluate(f, c, 32 * static_cast<std::uint64_t>(n)));
    worst = std::max(worst, fine / coarse.coarse_sup);
    if (fine > 5 * coarse.coarse_sup) ++violations;
  }
  return {violations == 0, "100 polynomials, " + std::to_string(violations) +
                               " violations, worst fine/coarse ratio " + fmt(worst)};
}

Outcome weyl_decay() {
  std::vector<BigInt> squares;
  for (std::int64_t k = 1; k <= 100000; ++k) squares.emplace_back(k * k);
  const IntegerSet sq = IntegerSet::from_sorted(squares);
  const CirclePoint theta = CirclePoint::turns(std::numbers::sqrt2_v<long double> - 1);
  const std::vector<CirclePoint> one{theta};
  const double at_end = weyl_means(sq, 100000, one).values[0].modulus;

  std::vector<std::size_t> ks;
  for (std::size_t k = 1; k <= 10000; ++k) ks.push_back(k);
  const CirclePoint half = CirclePoint::rational(1, 2);
  std::vector<BigInt> evens;
  std::vector<BigInt> naturals;
  for (std::int64_t k = 1; k <= 10000; ++k) {
    evens.emplace_back(2 * k);
    naturals.emplace_back(k);
  }
  const auto even_sums = weyl_sums(IntegerSet::from_sorted(evens), ks, half);
  const auto natural_sums = weyl_sums(IntegerSet::from_sorted(naturals), ks, half);
  bool evens_exact = true;
  bool naturals_bounded = true;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    const long double k = static_cast<long double>(ks[i]);
    evens_exact = evens_exact && even_sums[i] / k == std::complex<long double>(1, 0);
    naturals_bounded = naturals_bounded && std::abs(natural_sums[i] / k) <= 1 / k;
  }
  return {at_end < 0.1 && evens_exact && naturals_bounded,
          "|f_100000| for squares = " + fmt(at_end) + "; even numbers at 1/2 " +
              (evens_exact ? "exactly 1" : "not 1") + "; naturals at 1/2 " +
              (naturals_bounded ? "within 1/k" : "exceed 1/k")};
}

Outcome power_sumset_inequality() {
  const auto start = Clock::now();
  const IntegerSet base = generate_geometric(BigInt(3), 60);
  std::vector<CirclePoint> points;
  for (std::int64_t a = 0; a < 243; ++a) points.push_back(CirclePoint::rational(a, 243));
  for (std::int64_t a = 0; a < 256; ++a) points.push_back(CirclePoint::rational(a, 256));
  ScanOptions kronecker;
  kronecker.denominators = {};
  kronecker.irrational_points = 256;
  for (const CirclePoint& p : scan_points(kronecker)) points.push_back(p);
  std::size_t violations = 0;
  double tightest = 0;
  for (std::size_t k = 2; k <= 60; ++k) {
    const PowerSumsetComparison c = compare_power_and_sumset_means(base, k, 2, points, 0);
    if (!c.within_bound) ++violations;
    tightest = std::max(tightest, c.max_difference / c.bound);
  }
  return {violations == 0, "k = 2..60 over " + std::to_string(points.size()) + " points, " +
                               std::to_string(violations) + " violations, max diff/bound " +
                               fmt(tightest) + ", " + fmt(seconds_since(start)) + " s"};
}

Outcome summing_matrix() {
  std::mt19937_64 rng(4);
  std::size_t irregular = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t length = 20 + rng() % 180;
    std::vector<BigRational> densities;
    for (std::size_t i = 0; i < length; ++i) {
      const std::int64_t q = 1 + static_cast<std::int64_t>(rng() % 997);
      const std::int64_t p = 1 + static_cast<std::int64_t>(rng() % q);
      densities.emplace_back(p, q);
    }
    std::sort(densities.begin(), densities.end(), std::greater<>());
    const SummingMatrixReport r = summing_matrix_check(densities, length);
    if (!(r.regular && r.rows_sum_to_one && r.variation_sums_one)) ++irregular;
  }
  return {irregular == 0, "50 schedules, " + std::to_string(irregular) + " with a row or "
                          "variation sum different from 1"};
}

ExperimentConfig end_to_end_config(const std::string& out) {
  ExperimentConfig c;
  c.pipeline = "main_theorem";
  c.source.kind = "primes";
  c.source.limit = std::uint64_t{1} << 20;
  c.partition.kind = "dyadic";
  c.schedule.kind = "linear";
  c.schedule.cap = true;
  c.s = {2};
  c.trials = 100;
  c.seed = 1;
  c.tail_start = 12;
  c.output_dir = out;
  return c;
}

std::filesystem::path persisted_record;

Outcome pipeline_end_to_end(const std::string& out) {
  const auto start = Clock::now();
  const ExperimentConfig config = end_to_end_config(out);
  const PipelineResult r = run_pipeline(config);
  persisted_record = write_new_file(output_directory(config.output_dir),
                                    config.pipeline + "-" + config_hash(config), ".json",
                                    dump(r.record));
  const Json& v = r.record.at("verdicts");
  const Json& tail = v.at("tail_independence_s2");
  const Json& decay = v.at("psi_decay");
  const double elapsed = seconds_since(start);
  const bool pass = tail.at("pass").get<bool>() && decay.at("pass").get<bool>() && elapsed < 1800;
  return {pass, "tail blocks 2-independent in " + fmt(tail.at("observed").get<double>()) +
                    " of seeds (need " + fmt(tail.at("threshold").get<double>()) +
                    "), psi decay in " + fmt(decay.at("observed").get<double>()) + " (need " +
                    fmt(decay.at("threshold").get<double>()) + "), " + fmt(elapsed) + " s"};
}

Outcome determinism(const std::string& out) {
  if (persisted_record.empty()) pipeline_end_to_end(out);
  std::ifstream in(persisted_record);
  std::stringstream text;
  text << in.rdbuf();
  const Json original = parse_json(text.str());
  const ExperimentConfig config = config_from_json(original);
  const std::string again = dump(strip_timestamps(run_pipeline(config).record));
  const std::string before = dump(strip_timestamps(original));
  return {again == before, "re-run of " + persisted_record.filename().string() + " is " +
                               (again == before ? "byte-identical" : "different") +
                               " without timestamps"};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lacunary acceptance suite"};
  std::vector<std::string> only;
  std::vector<std::string> known;
  std::string out;
  app.add_option("--only", only, "run only these criteria");
  app.add_option("--known-failure", known, "criteria whose failure does not fail the run");
  app.add_option("--out", out, "directory for persisted records");
  CLI11_PARSE(app, argc, argv);
  if (out.empty()) {
    out = (std::filesystem::temp_directory_path() / "lacunary-acceptance").string();
  }

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"relation_enumeration", relation_enumeration},
      {"independence_oracle_equivalence", independence_oracle_equivalence},
      {"moment_identity", moment_identity},
      {"dependence_bound", dependence_bound},
      {"bernstein_tail", bernstein_tail},
      {"grid_bound", grid_bound},
      {"weyl_decay", weyl_decay},
      {"power_sumset_inequality", power_sumset_inequality},
      {"summing_matrix", summing_matrix},
      {"pipeline_end_to_end", [&] { return pipeline_end_to_end(out); }},
      {"determinism", [&] { return determinism(out); }},
  };

  const std::set<std::string> selected(only.begin(), only.end());
  const std::set<std::string> expected_failures(known.begin(), known.end());
  int unexpected = 0;
  int index = 0;
  for (const auto& [name, check] : criteria) {
    ++index;
    if (!selected.empty() && !selected.contains(name)) continue;
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << " [" << index << "] " << name << ": " << o.detail;
    if (!o.pass && expected_failures.contains(name)) std::cout << " (known failure)";
    std::cout << std::endl;
    if (!o.pass && !expected_failures.contains(name)) ++unexpected;
  }
  return unexpected == 0 ? 0 : 1;
}
