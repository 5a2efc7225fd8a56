#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "bfnl/rational.hpp"
#include "bfnl/rmcode.hpp"

#include "json.hpp"

namespace bfnl {

// Subset S of RM(r,n) whose pairwise distances all lie within
// tolerance = 2^{n-1}/C(n,r) of 2^{n-1}.
struct SeparatedSet {
  RMCodeSpec code;
  Rational tolerance;
  double alpha = 0.0;
  std::vector<uint64_t> members;  // message words, in Gray scan order

  // 2^{(1-alpha) C(n,r)}, the cardinality the separation construction aims for.
  double target_size() const {
    return std::exp2((1.0 - alpha) * double(binomial(code.n, code.r)));
  }
};

// Greedy construction: scan codewords in Gray order; a candidate joins S iff
// |d(candidate, h) - 2^{n-1}| <= tolerance for every current member h, with
// the comparison done exactly. Deterministic and single-threaded.
inline SeparatedSet greedy_separated_set(const MonomialBasis& basis, double alpha,
                                         uint32_t cap = kDefaultEnumCap) {
  require(alpha > 0.0 && alpha < 1.0, "greedy_separated_set: alpha must lie in (0, 1)");
  const int n = basis.spec.n;
  const int64_t half = int64_t(1) << (n - 1);
  const int64_t c_nr = binomial(n, basis.spec.r);

  SeparatedSet set;
  set.code = basis.spec;
  set.tolerance = Rational::make(half, c_nr);
  set.alpha = alpha;

  const size_t nwords = TruthTable::zero(n).word_count();
  std::vector<uint64_t> member_words;  // flat, nwords per member
  std::vector<uint64_t> cur(nwords, 0);

  const auto consider = [&](uint64_t message) {
    for (size_t m = 0; m < set.members.size(); ++m) {
      const uint64_t* mw = member_words.data() + m * nwords;
      int64_t d = 0;
      for (size_t i = 0; i < nwords; ++i) d += std::popcount(cur[i] ^ mw[i]);
      const int64_t dev = d > half ? d - half : half - d;
      if (dev * c_nr > half) return;  // |d - 2^{n-1}| > tolerance
    }
    set.members.push_back(message);
    member_words.insert(member_words.end(), cur.begin(), cur.end());
  };

  enumerate_gray(
      basis,
      [&](uint64_t message, int toggled) {
        if (toggled >= 0) {
          const auto& tw = basis.tables[toggled].words();
          for (size_t i = 0; i < nwords; ++i) cur[i] ^= tw[i];
        }
        consider(message);
      },
      cap);
  return set;
}

// Re-checks the pairwise property from scratch: every member is re-encoded and
// every pair is compared against the exact tolerance.
inline bool audit_separated_set(const MonomialBasis& basis, const SeparatedSet& set) {
  const int64_t half = int64_t(1) << (basis.spec.n - 1);
  std::vector<TruthTable> cws;
  cws.reserve(set.members.size());
  for (uint64_t m : set.members) cws.push_back(encode(basis, m));
  for (size_t i = 0; i < cws.size(); ++i) {
    for (size_t j = i + 1; j < cws.size(); ++j) {
      const int64_t d = int64_t(distance(cws[i], cws[j]));
      const int64_t dev = d > half ? d - half : half - d;
      // dev <= tau  <=>  dev * tau.den <= tau.num
      if (static_cast<__int128>(dev) * set.tolerance.den >
          static_cast<__int128>(set.tolerance.num))
        return false;
    }
  }
  return true;
}

inline std::string separated_set_to_csv(const SeparatedSet& set) {
  std::string out = "member_index,message_hex\n";
  for (size_t i = 0; i < set.members.size(); ++i)
    out += std::to_string(i) + "," + detail::message_to_hex(set.members[i], set.code.k) + "\n";
  return out;
}

inline nlohmann::json separated_set_summary_json(const SeparatedSet& set) {
  return nlohmann::json{{"r", set.code.r},
                        {"n", set.code.n},
                        {"alpha", set.alpha},
                        {"tau_num", set.tolerance.num},
                        {"tau_den", set.tolerance.den},
                        {"size", set.members.size()},
                        {"target_size", set.target_size()}};
}

}  // namespace bfnl
