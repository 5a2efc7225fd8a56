#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "bfnl/anf.hpp"
#include "bfnl/combinatorics.hpp"
#include "bfnl/truth_table.hpp"

namespace bfnl {

// Reed-Muller code RM(r,n): all Boolean functions on n variables of degree <= r.
struct RMCodeSpec {
  int n = 0;
  int r = 0;
  uint32_t k = 0;  // message length, 1 + C(n,1) + ... + C(n,r)

  static RMCodeSpec make(int n, int r) {
    require(n >= 1 && n <= kMaxVars, "RMCodeSpec: n must satisfy 1 <= n <= 31");
    require(r >= 0, "RMCodeSpec: order r must be nonnegative");
    require(r <= n, "RMCodeSpec: order r must satisfy r <= n");
    return RMCodeSpec{n, r, static_cast<uint32_t>(rm_dimension(n, r))};
  }
};

// Ordered monomial basis: all variable-subset masks with popcount <= r, sorted
// by (popcount, numeric mask), plus their truth tables. encode() XORs the
// tables selected by message bits, bit j of the message owning basis entry j.
struct MonomialBasis {
  RMCodeSpec spec;
  std::vector<uint32_t> masks;
  std::vector<TruthTable> tables;
};

namespace detail {

// Next mask with the same popcount in increasing numeric order (Gosper).
inline uint64_t next_same_popcount(uint64_t v) {
  const uint64_t u = v & (~v + 1);
  const uint64_t w = v + u;
  return w | (((v ^ w) >> 2) / u);
}

}  // namespace detail

inline MonomialBasis build_basis(const RMCodeSpec& spec) {
  MonomialBasis basis;
  basis.spec = spec;
  basis.masks.reserve(spec.k);
  basis.masks.push_back(0);
  for (int d = 1; d <= spec.r; ++d) {
    uint64_t v = (uint64_t(1) << d) - 1;
    const uint64_t lim = uint64_t(1) << spec.n;
    while (v < lim) {
      basis.masks.push_back(static_cast<uint32_t>(v));
      v = detail::next_same_popcount(v);
    }
  }
  basis.tables.reserve(basis.masks.size());
  for (uint32_t m : basis.masks) basis.tables.push_back(TruthTable::monomial(spec.n, m));
  return basis;
}

inline TruthTable encode(const MonomialBasis& basis, uint64_t message) {
  const uint32_t k = basis.spec.k;
  if (k < 64)
    require(message < (uint64_t(1) << k), "encode: message out of range for k=" + std::to_string(k));
  TruthTable cw = TruthTable::zero(basis.spec.n);
  uint64_t m = message;
  while (m) {
    const int j = std::countr_zero(m);
    m &= m - 1;
    cw ^= basis.tables[j];
  }
  return cw;
}

// Membership: f is in RM(r,n) iff degree(f) <= r (degree of the zero function
// is -1, so it belongs to every RM(r,n) with r >= 0).
inline bool contains(const RMCodeSpec& spec, const TruthTable& f) {
  require(f.vars() == spec.n, "contains: dimension mismatch");
  return degree(f) <= spec.r;
}

inline uint64_t gray_code(uint64_t rank) { return rank ^ (rank >> 1); }

// Visits all 2^k messages in binary-reflected Gray order. The visitor is
// called as visit(message, toggled) where toggled is the single basis index
// flipped relative to the previous visit; the first visit is message 0 (the
// zero codeword) with toggled = -1.
template <class Visitor>
void enumerate_gray(const MonomialBasis& basis, Visitor&& visit, uint32_t cap = kDefaultEnumCap) {
  const uint32_t k = basis.spec.k;
  require(cap <= 62, "enumerate_gray: cap too large");
  require(k <= cap, "enumerate_gray: k=" + std::to_string(k) + " exceeds enumeration cap " +
                        std::to_string(cap));
  uint64_t message = 0;
  visit(message, -1);
  const uint64_t total = uint64_t(1) << k;
  for (uint64_t rank = 1; rank < total; ++rank) {
    const int toggled = std::countr_zero(rank);
    message ^= uint64_t(1) << toggled;
    visit(message, toggled);
  }
}

}  // namespace bfnl
