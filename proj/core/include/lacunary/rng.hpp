#pragma once

#include <cstdint>

namespace lacunary {

// Counter-based randomness: every draw is a pure function of (key, counter),
// so selections are reproducible regardless of iteration order or threads.

constexpr std::uint64_t mix64(std::uint64_t x) {
  // SplitMix64 finalizer.
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t counter_hash(std::uint64_t key, std::uint64_t counter) {
  return mix64(mix64(key) ^ mix64(counter ^ 0x6a09e667f3bcc909ULL));
}

/// Uniform double in [0, 1) with 53 random bits.
constexpr double counter_uniform(std::uint64_t key, std::uint64_t counter) {
  return static_cast<double>(counter_hash(key, counter) >> 11) * 0x1.0p-53;
}

/// Seed of the stream-th independent job derived from a base seed.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return seed ^ mix64(stream + 0x3c6ef372fe94f82bULL);
}

}  // namespace lacunary
