#include <random>
#include <set>

#include <benchmark/benchmark.h>

#include "lacunary/circle.hpp"
#include "lacunary/grid.hpp"
#include "lacunary/integer_set.hpp"
#include "lacunary/relations.hpp"
#include "lacunary/selection.hpp"

using namespace lacunary;

static void BM_Sieve(benchmark::State& state) {
  const auto limit = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(generate_primes(limit));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Sieve)->RangeMultiplier(8)->Range(1 << 14, 1 << 23);

static IntegerSet random_set(std::size_t size, std::int64_t top, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> pick(1, top);
  std::set<std::int64_t> chosen;
  while (chosen.size() < size) chosen.insert(pick(rng));
  std::vector<BigInt> values(chosen.begin(), chosen.end());
  return IntegerSet::from_sorted(std::move(values));
}

static void BM_IndependenceS2(benchmark::State& state) {
  const IntegerSet e = random_set(static_cast<std::size_t>(state.range(0)), 1LL << 40, 1);
  for (auto _ : state) benchmark::DoNotOptimize(is_s_independent(e, 2));
}
BENCHMARK(BM_IndependenceS2)->RangeMultiplier(2)->Range(16, 256);

static void BM_IndependenceS3(benchmark::State& state) {
  const IntegerSet e = random_set(static_cast<std::size_t>(state.range(0)), 1LL << 50, 2);
  for (auto _ : state) benchmark::DoNotOptimize(is_s_independent(e, 3));
}
BENCHMARK(BM_IndependenceS3)->RangeMultiplier(2)->Range(8, 32);

static void BM_WeylIrrational(benchmark::State& state) {
  const IntegerSet e = generate_primes(1 << 22);
  const std::vector<CirclePoint> points{CirclePoint::turns(0.41421356237309504880L)};
  const auto k = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(weyl_means(e, k, points));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_WeylIrrational)->RangeMultiplier(8)->Range(1 << 10, 1 << 18);

static void BM_GridFft(benchmark::State& state) {
  std::mt19937_64 rng(3);
  SparsePolynomial p;
  const auto n = state.range(0);
  for (std::int64_t m = 0; m < n; m += 7) p.add(BigInt(m), (rng() & 1) ? 1.0 : -1.0);
  p.add(BigInt(n), 1.0);
  GridOptions options;
  options.smooth = state.range(1) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(sup_norm_via_grid(p, options));
}
BENCHMARK(BM_GridFft)->ArgsProduct({{1 << 12, 1 << 16, 1 << 20, 1000003}, {0, 1}});

static void BM_Select(benchmark::State& state) {
  const IntegerSet e = generate_primes(1 << 22);
  const DensitySchedule d = DensitySchedule::constant(e, 0.01);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(select(e, d, ++seed));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(e.size()));
}
BENCHMARK(BM_Select);
BENCHMARK_MAIN();
