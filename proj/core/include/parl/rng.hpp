#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace parl {

/// Deterministic seeded generator with derivable substreams.
///
/// The stream is xoshiro256** 1.0 (Blackman & Vigna, public domain), with
/// its 256-bit state filled from the seed by four successive SplitMix64
/// outputs. Both algorithms are published with reference implementations,
/// so any language can reproduce the streams bit-for-bit; test vectors are
/// frozen in tests/test_rng.cpp.
///
/// Substreams: `substream(label)` reseeds a child generator with
/// SplitMix64(seed XOR FNV-1a64(label)), so the same (seed, label) pair
/// always yields the same stream and distinct labels yield unrelated ones.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed);

  std::uint64_t next_u64();

  /// Uniform in [0, 1), 53-bit resolution.
  double next_double();

  /// Uniform in [0, bound), bias-free via rejection. bound must be > 0.
  std::uint32_t uniform_int(std::uint32_t bound);

  /// Child generator for an independent component ("env", "agent", ...).
  SeededRng substream(std::string_view label) const;

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::array<std::uint64_t, 4> state_;
};

/// One SplitMix64 step: advances `state` and returns the mixed output.
std::uint64_t splitmix64_next(std::uint64_t& state);

/// FNV-1a 64-bit hash, used to fold substream labels into seeds.
std::uint64_t fnv1a64(std::string_view text);

}  // namespace parl
