#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "bfnl/parallel.hpp"
#include "bfnl/rational.hpp"
#include "bfnl/rmcode.hpp"

#include "json.hpp"

namespace bfnl {

// Exact weight histogram of RM(r,n): count of codewords per weight.
// Invariants: counts sum to 2^k and count(w) = count(2^n - w).
struct WeightCensus {
  int n = 0;
  int r = 0;
  uint32_t k = 0;
  std::vector<std::pair<uint32_t, uint64_t>> entries;  // (weight, count), sorted by weight

  uint64_t total() const {
    uint64_t t = 0;
    for (const auto& [w, c] : entries) t += c;
    return t;
  }

  uint64_t count_at(uint32_t weight) const {
    const auto it = std::lower_bound(entries.begin(), entries.end(), weight,
                                     [](const auto& e, uint32_t w) { return e.first < w; });
    return it != entries.end() && it->first == weight ? it->second : 0;
  }
};

// Full census over all 2^k codewords via Gray enumeration with incremental
// weight updates: one monomial-table XOR per visit. Partitionable into Gray
// blocks; histogram merging is commutative, so the result is independent of
// the worker count.
inline WeightCensus weight_census(const MonomialBasis& basis, int jobs = 1,
                                  uint32_t cap = kDefaultEnumCap) {
  const uint32_t k = basis.spec.k;
  require(k <= cap, "weight_census: k=" + std::to_string(k) + " exceeds enumeration cap " +
                        std::to_string(cap));
  const int n = basis.spec.n;
  const uint64_t total = uint64_t(1) << k;
  const bool dense = n <= 22;  // direct-indexed histogram up to 2^22+1 buckets

  const auto ranges = detail::split_ranges(total, detail::effective_jobs(jobs));
  std::vector<std::vector<uint64_t>> dense_hists;
  std::vector<std::unordered_map<uint32_t, uint64_t>> sparse_hists;
  if (dense)
    dense_hists.assign(ranges.size(), {});
  else
    sparse_hists.assign(ranges.size(), {});

  detail::run_workers(ranges.size(), [&](size_t worker) {
    const auto [lo, hi] = ranges[worker];
    if (lo >= hi) return;
    std::vector<uint64_t>* dh = nullptr;
    std::unordered_map<uint32_t, uint64_t>* sh = nullptr;
    if (dense) {
      dense_hists[worker].assign((uint64_t(1) << n) + 1, 0);
      dh = &dense_hists[worker];
    } else {
      sh = &sparse_hists[worker];
    }
    TruthTable cw = encode(basis, gray_code(lo));
    std::vector<uint64_t> cur = cw.words();
    uint64_t w = weight(cw);
    const auto bump = [&](uint64_t wt) {
      if (dh)
        (*dh)[wt] += 1;
      else
        (*sh)[static_cast<uint32_t>(wt)] += 1;
    };
    bump(w);
    for (uint64_t rank = lo + 1; rank < hi; ++rank) {
      const int t = std::countr_zero(rank);
      const auto& tw = basis.tables[t].words();
      int64_t delta = 0;
      for (size_t i = 0; i < cur.size(); ++i) {
        const uint64_t nw = cur[i] ^ tw[i];
        delta += std::popcount(nw) - std::popcount(cur[i]);
        cur[i] = nw;
      }
      w = static_cast<uint64_t>(int64_t(w) + delta);
      bump(w);
    }
  });

  std::map<uint32_t, uint64_t> merged;
  if (dense) {
    for (const auto& h : dense_hists)
      for (uint64_t w = 0; w < h.size(); ++w)
        if (h[w]) merged[static_cast<uint32_t>(w)] += h[w];
  } else {
    for (const auto& h : sparse_hists)
      for (const auto& [w, c] : h) merged[w] += c;
  }

  WeightCensus census;
  census.n = n;
  census.r = basis.spec.r;
  census.k = k;
  census.entries.assign(merged.begin(), merged.end());
  return census;
}

// A_{r,n}(x) = #{g in RM(r,n) : wt(g) <= 2^n x}, exact rational threshold.
inline uint64_t census_query_A(const WeightCensus& census, const Rational& x) {
  require(cmp(x, Rational::from_int(0)) >= 0 && cmp(x, Rational::from_int(1)) <= 0,
          "census_query_A: x must lie in [0, 1]");
  const __int128 rhs = static_cast<__int128>(int64_t(1) << census.n) * x.num;
  uint64_t total = 0;
  for (const auto& [w, c] : census.entries)
    if (static_cast<__int128>(w) * x.den <= rhs) total += c;
  return total;
}

// B_{r,n} = #{g : |wt(g) - 2^{n-1}| >= 2^{n-1}/C(n,r)}, boundary inclusive,
// compared exactly. Matches 2 A_{r,n}((1 - 1/C(n,r))/2) through the
// complementation bijection; both filters include the boundary weight.
inline uint64_t census_B(const WeightCensus& census) {
  const int64_t half = int64_t(1) << (census.n - 1);
  const int64_t c_nr = binomial(census.n, census.r);
  uint64_t total = 0;
  for (const auto& [w, c] : census.entries) {
    const int64_t dev = int64_t(w) > half ? int64_t(w) - half : half - int64_t(w);
    if (static_cast<__int128>(dev) * c_nr >= half) total += c;
  }
  return total;
}

// Empirical exponent log2 A_{r,n}((1-delta)/2) / (n^{r-1} log2(1/delta)) for
// inspecting the census against the Kaufman-Lovett-Porat shape. Nothing is
// asserted about the constant; this is reporting only.
inline double census_small_weight_exponent(const WeightCensus& census, const Rational& delta) {
  require(delta.num > 0 && cmp(delta, Rational::make(1, 2)) <= 0,
          "census_small_weight_exponent: delta must lie in (0, 1/2]");
  const Rational x = Rational::make(delta.den - delta.num, 2 * delta.den);
  const uint64_t a = census_query_A(census, x);
  const double log2_inv_delta = std::log2(double(delta.den)) - std::log2(double(delta.num));
  const double scale = std::pow(double(census.n), census.r - 1) * log2_inv_delta;
  return std::log2(double(a)) / scale;
}

inline std::string census_to_csv(const WeightCensus& census) {
  std::string out = "weight,count\n";
  for (const auto& [w, c] : census.entries)
    out += std::to_string(w) + "," + std::to_string(c) + "\n";
  return out;
}

inline nlohmann::json census_to_json(const WeightCensus& census) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& [w, c] : census.entries)
    entries.push_back(nlohmann::json{{"weight", w}, {"count", c}});
  return nlohmann::json{{"n", census.n}, {"r", census.r}, {"k", census.k}, {"entries", entries}};
}

}  // namespace bfnl
