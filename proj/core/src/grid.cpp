#include "lacunary/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <mutex>

#include <fftw3.h>

#include "lacunary/error.hpp"

namespace lacunary {

namespace {

// Planning in FFTW is not thread-safe; execution of distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex mutex;
  return mutex;
}

struct FftwFree {
  void operator()(fftw_complex* p) const { fftw_free(p); }
};

}  // namespace

void SparsePolynomial::add(BigInt frequency, std::complex<double> coefficient) {
  frequencies.push_back(std::move(frequency));
  coefficients.push_back(coefficient);
}

BigInt SparsePolynomial::max_frequency() const {
  BigInt n = 0;
  for (std::size_t i = 0; i < frequencies.size(); ++i) {
    if (coefficients[i] != std::complex<double>{}) n = std::max(n, BigInt(abs(frequencies[i])));
  }
  return n;
}

bool SparsePolynomial::is_zero() const {
  return std::all_of(coefficients.begin(), coefficients.end(),
                     [](const auto& c) { return c == std::complex<double>{}; });
}

std::uint64_t next_smooth_size(std::uint64_t n) {
  if (n <= 1) return 1;
  std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
  for (std::uint64_t p7 = 1; p7 < best; p7 *= 7) {
    for (std::uint64_t p5 = p7; p5 < best; p5 *= 5) {
      for (std::uint64_t p3 = p5; p3 < best; p3 *= 3) {
        std::uint64_t v = p3;
        while (v < n) v *= 2;
        best = std::min(best, v);
        if (p3 > n) break;
      }
      if (p5 > n) break;
    }
    if (p7 > n) break;
  }
  return best;
}

std::vector<std::complex<double>> evaluate_on_grid(const SparsePolynomial& polynomial,
                                                   std::uint64_t grid_size) {
  if (grid_size == 0) {
    throw PreconditionError("evaluate_on_grid: grid size must be positive");
  }
  if (grid_size > static_cast<std::uint64_t>(std::numeric_limits<int>::max())) {
    throw PreconditionError("evaluate_on_grid: grid too large");
  }
  const auto g = static_cast<std::size_t>(grid_size);
  std::unique_ptr<fftw_complex, FftwFree> data(fftw_alloc_complex(g));
  if (!data) {
    throw Error("evaluate_on_grid: out of memory for a grid of " + std::to_string(g));
  }
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_1d(static_cast<int>(g), data.get(), data.get(), FFTW_BACKWARD,
                            FFTW_ESTIMATE);
  }
  std::fill_n(reinterpret_cast<double*>(data.get()), 2 * g, 0.0);
  for (std::size_t i = 0; i < polynomial.frequencies.size(); ++i) {
    const std::size_t slot = mod_u64(polynomial.frequencies[i], grid_size);
    data.get()[slot][0] += polynomial.coefficients[i].real();
    data.get()[slot][1] += polynomial.coefficients[i].imag();
  }
  fftw_execute(plan);
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  std::vector<std::complex<double>> values(g);
  for (std::size_t m = 0; m < g; ++m) {
    values[m] = {data.get()[m][0], data.get()[m][1]};
  }
  return values;
}

GridSupNorm sup_norm_via_grid(const SparsePolynomial& polynomial, const GridOptions& options) {
  if (options.multiplier < 4) {
    throw PreconditionError("sup_norm_via_grid: the certificate needs at least 4N points");
  }
  GridSupNorm result;
  const BigInt n = polynomial.max_frequency();
  result.required_grid = BigInt(options.multiplier) * std::max(n, BigInt(1));
  if (polynomial.is_zero()) {
    result.grid_size = 1;
    result.certified_bound = 0.0;
    return result;
  }
  std::uint64_t grid = options.max_grid;
  if (result.required_grid <= options.max_grid) {
    grid = static_cast<std::uint64_t>(result.required_grid);
    if (options.smooth) grid = std::min(next_smooth_size(grid), options.max_grid);
    if (grid < result.required_grid) grid = static_cast<std::uint64_t>(result.required_grid);
  }
  result.grid_size = grid;
  result.capped = result.required_grid > grid;
  const auto values = evaluate_on_grid(polynomial, grid);
  for (std::size_t m = 0; m < values.size(); ++m) {
    const double v = std::abs(values[m]);
    if (v > result.coarse_sup) {
      result.coarse_sup = v;
      result.argmax = m;
    }
  }
  if (!result.capped) {
    result.certified_bound = 5.0 * result.coarse_sup;
  }
  return result;
}

}  // namespace lacunary
