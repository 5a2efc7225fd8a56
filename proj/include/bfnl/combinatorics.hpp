#pragma once

#include <cstdint>

#include "bfnl/error.hpp"

namespace bfnl {

// Exact binomial coefficient; 0 outside 0 <= k <= n. Intermediate products go
// through 128 bits, results must fit int64 (always true for the n <= 62 used here).
inline int64_t binomial(int n, int k) {
  if (k < 0 || k > n || n < 0) return 0;
  if (k > n - k) k = n - k;
  __int128 c = 1;
  for (int i = 1; i <= k; ++i) {
    c = c * (n - k + i) / i;  // exact: the prefix product is C(n-k+i, i)
    require(c <= INT64_MAX, "binomial: overflow");
  }
  return static_cast<int64_t>(c);
}

// Message length of RM(r,n): 1 + C(n,1) + ... + C(n,r).
inline int64_t rm_dimension(int n, int r) {
  require(n >= 0 && r >= 0 && r <= n, "rm_dimension: need 0 <= r <= n");
  int64_t k = 0;
  for (int i = 0; i <= r; ++i) k += binomial(n, i);
  return k;
}

}  // namespace bfnl
