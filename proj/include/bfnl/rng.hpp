#pragma once

#include <cstdint>

#include "bfnl/truth_table.hpp"

namespace bfnl {

// Arbitrary fixed default master seed, used by the CLI when --seed is unset.
inline constexpr uint64_t kDefaultMasterSeed = 0xB0A11F0042D5EC7Aull;

// Seed derivation scheme identifier; bumped if the stream contract ever
// changes. Emitted alongside format_version in experiment metadata.
inline constexpr int kFormatVersion = 1;

struct SeedSpec {
  uint64_t master_seed = kDefaultMasterSeed;
  uint64_t stream_index = 0;

  bool operator==(const SeedSpec&) const = default;
};

inline uint64_t splitmix64_next(uint64_t& state) {
  uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// xoshiro256** seeded via SplitMix64 from (master_seed XOR stream_index * golden).
// Identical SeedSpecs give identical bit streams.
class Xoshiro256StarStar {
 public:
  explicit Xoshiro256StarStar(const SeedSpec& seed) {
    uint64_t sm = seed.master_seed ^ (seed.stream_index * 0x9E3779B97F4A7C15ull);
    for (auto& s : s_) s = splitmix64_next(sm);
  }

  uint64_t next() {
    const uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

 private:
  static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  uint64_t s_[4];
};

// Stream for sample i of an experiment keyed by a base seed.
inline SeedSpec derive_stream(const SeedSpec& seed, uint64_t i) {
  return SeedSpec{seed.master_seed, seed.stream_index + i};
}

// Uniform random truth table on n variables. Each PRNG output contributes 64
// table bits, consumed low to high, so for a fixed seed the table at n is the
// prefix of the bit stream used at n+1 (f_n is a restriction of f_{n+1}).
inline TruthTable sample_uniform(const SeedSpec& seed, int n) {
  require(n >= 1 && n <= kMaxVars, "sample_uniform: n out of range");
  Xoshiro256StarStar rng(seed);
  const uint64_t nbits = uint64_t(1) << n;
  std::vector<uint64_t> words((nbits + 63) / 64);
  for (auto& w : words) w = rng.next();
  if (nbits < 64) words[0] &= (uint64_t(1) << nbits) - 1;
  return TruthTable::from_words(n, std::move(words));
}

}  // namespace bfnl
