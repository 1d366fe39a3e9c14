#pragma once

#include <cstdint>
#include <random>

namespace mfpca {

enum class StreamPurpose : std::uint64_t { Cuts = 1, Signs = 2, Scores = 3 };

/// SplitMix64 finaliser.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Key for an independent stream: a pure function of (seed, replication,
/// purpose), so the stream a replication sees does not depend on scheduling.
constexpr std::uint64_t stream_key(std::uint64_t base_seed, std::uint64_t replication,
                                   StreamPurpose purpose) noexcept {
  return mix64(mix64(mix64(base_seed) ^ replication) ^ static_cast<std::uint64_t>(purpose));
}

inline std::mt19937_64 make_stream(std::uint64_t base_seed, std::uint64_t replication,
                                   StreamPurpose purpose) {
  const std::uint64_t key = stream_key(base_seed, replication, purpose);
  std::seed_seq seq{static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32),
                    static_cast<std::uint32_t>(replication),
                    static_cast<std::uint32_t>(purpose)};
  return std::mt19937_64(seq);
}

}  // namespace mfpca
