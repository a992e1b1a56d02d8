#pragma once

#include <cstdint>
#include <random>

namespace mtgl {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer; decorrelates nearby seeds.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Independent stream keyed by (seed, purpose, index). Results depend only on
/// the key, never on which thread draws from the stream.
inline Rng stream(std::uint64_t seed, std::uint64_t purpose, std::uint64_t index = 0) {
  return Rng(mix64(mix64(mix64(seed) ^ purpose) ^ index));
}

/// Per-replicate seed for harnesses that regenerate a whole problem.
constexpr std::uint64_t replicate_seed(std::uint64_t seed, std::uint64_t replicate) {
  return mix64(seed ^ mix64(replicate + 0x5851F42D4C957F2DULL));
}

}  // namespace mtgl
