#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "bfnl/truth_table.hpp"

namespace bfnl {

namespace detail {

// In-place XOR butterfly over n stages: stage j does bits[i] ^= bits[i - 2^j]
// for every i with bit j set. Self-inverse, so it serves both directions of
// the binary Moebius transform.
inline void xor_butterfly(std::vector<uint64_t>& w, int n) {
  for (int j = 0; j < n && j < 6; ++j) {
    const uint64_t lo = ~kCoordMask[j];  // bits whose index has bit j clear
    const int shift = 1 << j;
    for (auto& x : w) x ^= (x & lo) << shift;
  }
  for (int j = 6; j < n; ++j) {
    const size_t half = size_t(1) << (j - 6);
    for (size_t base = 0; base < w.size(); base += 2 * half)
      for (size_t i = 0; i < half; ++i) w[base + half + i] ^= w[base + i];
  }
}

}  // namespace detail

// Algebraic-normal-form coefficients, packed like a truth table: bit at mask m
// is the coefficient of the monomial prod_{b set in m} x_{b+1}.
struct AnfCoefficients {
  int vars = 0;
  std::vector<uint64_t> words;

  bool get(uint32_t mask) const { return (words[mask >> 6] >> (mask & 63)) & 1; }
  std::string to_hex() const { return detail::bits_to_hex(words, uint64_t(1) << vars); }

  static AnfCoefficients from_hex(std::string_view text, int n) {
    // reuse the table parser; packing and padding rules are identical
    TruthTable t = TruthTable::from_hex(text, n);
    return AnfCoefficients{t.vars(), t.words()};
  }

  bool operator==(const AnfCoefficients&) const = default;
};

// coeffs[m] = XOR over all i with (i AND m) == i of f(i).
inline AnfCoefficients mobius_transform(const TruthTable& f) {
  require(f.vars() >= 1, "mobius_transform: empty table");
  std::vector<uint64_t> w = f.words();
  detail::xor_butterfly(w, f.vars());
  return AnfCoefficients{f.vars(), std::move(w)};
}

inline TruthTable mobius_inverse(const AnfCoefficients& a) {
  std::vector<uint64_t> w = a.words;
  detail::xor_butterfly(w, a.vars);
  return TruthTable::from_words(a.vars, std::move(w));
}

// Max popcount over set coefficient masks; -1 for the zero function.
inline int degree(const AnfCoefficients& a) {
  int deg = -1;
  for (size_t wi = 0; wi < a.words.size(); ++wi) {
    uint64_t w = a.words[wi];
    if (w == 0) continue;
    const int base = std::popcount(uint64_t(wi));
    while (w) {
      const int b = std::countr_zero(w);
      w &= w - 1;
      const int d = base + std::popcount(uint32_t(b));
      if (d > deg) deg = d;
    }
  }
  return deg;
}

inline int degree(const TruthTable& f) { return degree(mobius_transform(f)); }

}  // namespace bfnl
