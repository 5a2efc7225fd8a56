#pragma once

#include <cstdint>
#include <vector>

#include "bfnl/truth_table.hpp"

namespace bfnl {

// All correlations with linear functions: values[a] = sum_x (-1)^{f(x) + <a,x>}.
// Entries are even for n >= 1, bounded by 2^n, and satisfy Parseval:
// sum_a values[a]^2 = 4^n.
struct WalshSpectrum {
  int vars = 0;
  std::vector<int32_t> values;
};

// Size-doubling butterfly, O(n 2^n). The cap bounds the 2^n-entry work array.
inline WalshSpectrum walsh_hadamard(const TruthTable& f, int cap = kDefaultSpectrumCap) {
  require(f.vars() >= 1, "walsh_hadamard: empty table");
  require(f.vars() <= cap, "walsh_hadamard: n exceeds spectrum cap " + std::to_string(cap));
  const uint64_t n_points = f.size();
  std::vector<int32_t> v(n_points);
  const auto& words = f.words();
  for (uint64_t w = 0; w < words.size(); ++w) {
    const uint64_t bits = words[w];
    const uint64_t base = w << 6;
    const uint64_t lim = n_points - base < 64 ? n_points - base : 64;
    for (uint64_t b = 0; b < lim; ++b) v[base + b] = ((bits >> b) & 1) ? -1 : 1;
  }
  for (uint64_t len = 1; len < n_points; len <<= 1) {
    for (uint64_t i = 0; i < n_points; i += 2 * len) {
      for (uint64_t j = i; j < i + len; ++j) {
        const int32_t a = v[j];
        const int32_t b = v[j + len];
        v[j] = a + b;
        v[j + len] = a - b;
      }
    }
  }
  return WalshSpectrum{f.vars(), std::move(v)};
}

}  // namespace bfnl
