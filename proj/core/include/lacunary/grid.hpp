#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "lacunary/bigint.hpp"

namespace lacunary {

/// f(t) = sum_i c_i exp(2 pi i m_i theta) with arbitrary-precision frequencies.
struct SparsePolynomial {
  std::vector<BigInt> frequencies;
  std::vector<std::complex<double>> coefficients;

  void add(BigInt frequency, std::complex<double> coefficient);
  /// N = max |m_i| over nonzero coefficients (0 for the zero polynomial).
  BigInt max_frequency() const;
  bool is_zero() const;
};

struct GridOptions {
  /// Grid points per unit of N: the grid is R = {t : t^(multiplier N) = 1}.
  std::uint64_t multiplier = 4;
  /// Largest grid evaluated; larger requirements are capped and flagged.
  std::uint64_t max_grid = std::uint64_t{1} << 24;
  /// Round the grid up to the next 7-smooth size for a faster transform.
  bool smooth = false;
};

struct GridSupNorm {
  /// multiplier * max(N, 1).
  BigInt required_grid;
  std::uint64_t grid_size = 0;
  bool capped = false;
  /// S = max |f| over the evaluated grid: a lower estimate of ||f||_inf.
  double coarse_sup = 0.0;
  /// 5 S, present only when the grid has at least 4N points.
  std::optional<double> certified_bound;
  /// Grid index m of the maximum, t = exp(2 pi i m / grid_size).
  std::uint64_t argmax = 0;
};

/// Values f(exp(2 pi i m / G)) for m = 0..G-1. Frequencies are reduced mod G,
/// which is exact on the grid.
std::vector<std::complex<double>> evaluate_on_grid(const SparsePolynomial& polynomial,
                                                   std::uint64_t grid_size);

/// Coarse sup-norm over the 4N-th roots of unity with the certificate
/// ||f||_inf <= 5 sup_R |f|.
GridSupNorm sup_norm_via_grid(const SparsePolynomial& polynomial, const GridOptions& options = {});

/// Smallest 2^a 3^b 5^c 7^d >= n.
std::uint64_t next_smooth_size(std::uint64_t n);

}  // namespace lacunary
