#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "bfnl/bounds.hpp"
#include "bfnl/parallel.hpp"
#include "bfnl/rmcode.hpp"
#include "bfnl/walsh.hpp"

namespace bfnl {

// N_r(f) together with the witnesses and normalisations used everywhere else:
// Y = 2^n - 2 N_r(f), lambda = sqrt(2^{n+1} C(n,r) ln 2), ratio = Y / lambda.
struct NonlinearityResult {
  int n = 0;
  int r = 0;
  uint32_t value = 0;        // N_r(f), 0 <= value <= 2^{n-1}
  uint64_t best_message = 0; // message word of a minimising codeword
  int64_t y = 0;
  double lambda = 0.0;
  double ratio = 0.0;
};

namespace detail {

inline void fill_derived(NonlinearityResult& res) {
  res.y = (int64_t(1) << res.n) - 2 * int64_t(res.value);
  res.lambda = lambda_n(res.n, res.r);
  res.ratio = double(res.y) / res.lambda;
}

struct SearchBest {
  uint64_t dist;
  uint64_t rank;
  uint64_t message;
};

// Gray scan of ranks [lo, hi) keeping the minimum distance to f and the first
// message attaining it. One monomial XOR plus a popcount pass per visit.
inline SearchBest search_gray_chunk(const TruthTable& f, const MonomialBasis& basis,
                                    uint64_t lo, uint64_t hi) {
  uint64_t message = gray_code(lo);
  TruthTable start = f ^ encode(basis, message);
  const size_t nwords = start.word_count();
  const size_t k = basis.tables.size();
  SearchBest best{weight(start), lo, message};

  if (nwords == 1) {
    std::vector<uint64_t> tw(k);
    for (size_t t = 0; t < k; ++t) tw[t] = basis.tables[t].words()[0];
    uint64_t cur = start.words()[0];
    for (uint64_t rank = lo + 1; rank < hi; ++rank) {
      const int t = std::countr_zero(rank);
      message ^= uint64_t(1) << t;
      cur ^= tw[t];
      const uint64_t d = std::popcount(cur);
      if (d < best.dist) best = {d, rank, message};
    }
  } else if (nwords == 2) {
    std::vector<uint64_t> tw0(k), tw1(k);
    for (size_t t = 0; t < k; ++t) {
      tw0[t] = basis.tables[t].words()[0];
      tw1[t] = basis.tables[t].words()[1];
    }
    uint64_t c0 = start.words()[0], c1 = start.words()[1];
    for (uint64_t rank = lo + 1; rank < hi; ++rank) {
      const int t = std::countr_zero(rank);
      message ^= uint64_t(1) << t;
      c0 ^= tw0[t];
      c1 ^= tw1[t];
      const uint64_t d = uint64_t(std::popcount(c0)) + uint64_t(std::popcount(c1));
      if (d < best.dist) best = {d, rank, message};
    }
  } else {
    std::vector<uint64_t> cur = start.words();
    uint64_t d = best.dist;
    for (uint64_t rank = lo + 1; rank < hi; ++rank) {
      const int t = std::countr_zero(rank);
      message ^= uint64_t(1) << t;
      const auto& tw = basis.tables[t].words();
      int64_t delta = 0;
      for (size_t i = 0; i < nwords; ++i) {
        const uint64_t nw = cur[i] ^ tw[i];
        delta += std::popcount(nw) - std::popcount(cur[i]);
        cur[i] = nw;
      }
      d = uint64_t(int64_t(d) + delta);
      if (d < best.dist) best = {d, rank, message};
    }
  }
  return best;
}

}  // namespace detail

// N_1 via the Walsh spectrum: N_1 = 2^{n-1} - max_a |W_f(a)| / 2. The witness
// encodes the maximising affine function (mask a, complemented when W_f(a) is
// negative); ties break towards the smallest mask.
inline NonlinearityResult nonlinearity_order1(const TruthTable& f,
                                              int cap = kDefaultSpectrumCap) {
  const WalshSpectrum spectrum = walsh_hadamard(f, cap);
  int64_t best_abs = -1;
  uint64_t best_mask = 0;
  bool negative = false;
  for (uint64_t a = 0; a < spectrum.values.size(); ++a) {
    const int64_t w = spectrum.values[a];
    const int64_t aw = w < 0 ? -w : w;
    if (aw > best_abs) {
      best_abs = aw;
      best_mask = a;
      negative = w < 0;
    }
  }
  NonlinearityResult res;
  res.n = f.vars();
  res.r = 1;
  res.value = static_cast<uint32_t>((f.size() - uint64_t(best_abs)) / 2);
  // RM(1,n) basis order is [constant, x1, ..., xn], so the message for
  // <a,x> (+1) is the mask shifted past the constant bit.
  res.best_message = (best_mask << 1) | (negative ? 1 : 0);
  detail::fill_derived(res);
  return res;
}

// Exact N_r by Gray enumeration of all 2^k codewords with incremental distance
// updates. Tie-break: first minimising message in Gray visit order ("smaller
// Gray rank wins"), which also makes the parallel reduction deterministic.
inline NonlinearityResult nonlinearity_exhaustive(const TruthTable& f, int r, int jobs = 1,
                                                  uint32_t cap = kDefaultEnumCap) {
  const RMCodeSpec spec = RMCodeSpec::make(f.vars(), r);
  require(spec.k <= cap, "nonlinearity_exhaustive: k=" + std::to_string(spec.k) +
                             " exceeds enumeration cap " + std::to_string(cap));
  const MonomialBasis basis = build_basis(spec);
  const uint64_t total = uint64_t(1) << spec.k;
  const auto ranges = detail::split_ranges(total, detail::effective_jobs(jobs));

  std::vector<detail::SearchBest> bests(ranges.size());
  detail::run_workers(ranges.size(), [&](size_t w) {
    const auto [lo, hi] = ranges[w];
    if (lo < hi) bests[w] = detail::search_gray_chunk(f, basis, lo, hi);
  });

  detail::SearchBest best = bests.front();
  for (const auto& b : bests)
    if (b.dist < best.dist || (b.dist == best.dist && b.rank < best.rank)) best = b;

  NonlinearityResult res;
  res.n = f.vars();
  res.r = r;
  res.value = static_cast<uint32_t>(best.dist);
  res.best_message = best.message;
  detail::fill_derived(res);
  return res;
}

// (2^{n-1} - N_r) / sqrt(2^{n-1} C(n,r) ln 2); algebraically equal to y/lambda.
inline double normalized_statistic(const NonlinearityResult& res) {
  detail::check_order(res.n, res.r, "normalized_statistic");
  const double numer = std::ldexp(1.0, res.n - 1) - double(res.value);
  const double denom = std::sqrt(std::ldexp(double(binomial(res.n, res.r)) * kLn2, res.n - 1));
  return numer / denom;
}

}  // namespace bfnl
