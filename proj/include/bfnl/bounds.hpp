#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bfnl/combinatorics.hpp"
#include "bfnl/truth_table.hpp"

namespace bfnl {

inline constexpr double kLn2 = 0.69314718055994530942;
inline constexpr double kPi = 3.14159265358979323846;

// Probability-scale quantity carried in log2 form so that exponents like
// C(n,r) >= 50 do not underflow; value is exp2(log2_value) when representable.
struct LogProb {
  double log2_value = 0.0;
  double value = 0.0;

  static LogProb from_log2(double l) { return LogProb{l, std::exp2(l)}; }
};

namespace detail {

inline void check_order(int n, int r, const char* what) {
  require(n >= 1 && n <= kMaxVars, std::string(what) + ": n out of range");
  require(r >= 0 && r <= n,
          std::string(what) + ": r out of range (C(n,r) would vanish)");
}

// log cosh(x), stable for large |x|.
inline double log_cosh(double x) {
  const double a = std::fabs(x);
  return a + std::log1p(std::exp(-2.0 * a)) - kLn2;
}

}  // namespace detail

// lambda_n = sqrt(2^{n+1} C(n,r) ln 2), the normalisation of the maximal
// correlation Y_n. Natural logarithm throughout.
inline double lambda_n(int n, int r) {
  detail::check_order(n, r, "lambda_n");
  return std::sqrt(std::ldexp(double(binomial(n, r)) * kLn2, n + 1));
}

// E[Y_n] <= sqrt(2^{n+1} (1 + C(n,1) + ... + C(n,r)) ln 2).
inline double expectation_upper_bound(int n, int r) {
  require(n >= 1 && n <= kMaxVars, "expectation_upper_bound: n out of range");
  require(r >= 0 && r <= n, "expectation_upper_bound: r out of range");
  return std::sqrt(std::ldexp(double(rm_dimension(n, r)) * kLn2, n + 1));
}

// P[|Y_n - E Y_n| >= theta] <= 2 exp(-theta^2 / 2^{n+1}), clamped at 1.
inline double concentration_bound(int n, double theta) {
  require(n >= 1 && n <= kMaxVars, "concentration_bound: n out of range");
  require(theta >= 0.0, "concentration_bound: theta must be nonnegative");
  const double raw = 2.0 * std::exp(-std::ldexp(theta * theta, -(n + 1)));
  return raw < 1.0 ? raw : 1.0;
}

// Joint MGF of (Y_g, Y_h) at (t1, t2): the exact product form and its
// subgaussian bound exp(N(t1^2+t2^2)/2 + t1 t2 <g,h>). The exact value always
// satisfies exact <= bound; both are also returned in natural-log form since
// the linear values can overflow for large N |t|.
struct MgfPairResult {
  double exact = 0.0;
  double bound = 0.0;
  double log_exact = 0.0;
  double log_bound = 0.0;
};

inline MgfPairResult mgf_pair(const TruthTable& g, const TruthTable& h, double t1, double t2) {
  require(g.vars() == h.vars(), "mgf_pair: dimension mismatch");
  require(g.vars() <= 24, "mgf_pair: n exceeds cap 24");
  require(std::fabs(t1) <= 10.0 && std::fabs(t2) <= 10.0,
          "mgf_pair: |t1|, |t2| must be <= 10");
  const double n_same_sign = double(g.size() - distance(g, h));
  const double n_diff_sign = double(distance(g, h));
  const double n_points = double(g.size());
  MgfPairResult res;
  // coordinates where g and h agree contribute cosh(t1+t2), the rest cosh(t1-t2)
  res.log_exact = n_same_sign * detail::log_cosh(t1 + t2) + n_diff_sign * detail::log_cosh(t1 - t2);
  const double ip = n_same_sign - n_diff_sign;  // <(-1)^g, (-1)^h>
  res.log_bound = 0.5 * n_points * (t1 * t1 + t2 * t2) + t1 * t2 * ip;
  res.exact = std::exp(res.log_exact);
  res.bound = std::exp(res.log_bound);
  return res;
}

// Joint upper-tail ceiling 4/4^{C(n,r)} for near-orthogonal sign vectors.
inline LogProb joint_tail_bound(int n, int r) {
  detail::check_order(n, r, "joint_tail_bound");
  return LogProb::from_log2(2.0 - 2.0 * double(binomial(n, r)));
}

// Lower bound 1/(3 2^{C(n,r)} sqrt(C(n,r))) for P[S_{2^n} >= lambda_n].
inline LogProb pr_lb_bound(int n, int r) {
  detail::check_order(n, r, "pr_lb_bound");
  const double c = double(binomial(n, r));
  return LogProb::from_log2(-c - std::log2(3.0) - 0.5 * std::log2(c));
}

// Normal-approximation value 2^{-C(n,r)} / sqrt(4 pi C(n,r) ln 2); its ratio
// to the exact tail tends to 1.
inline LogProb feller_tail_approx(int n, int r) {
  detail::check_order(n, r, "feller_tail_approx");
  const double c = double(binomial(n, r));
  return LogProb::from_log2(-c - 0.5 * std::log2(4.0 * kPi * c * kLn2));
}

// sqrt(4 pi ln 2) ~ 2.9513; being < 3 is what closes the tail lower-bound
// estimate.
inline double feller_constant() { return std::sqrt(4.0 * kPi * kLn2); }

// Smallest achievable value s of S_N with s >= t: S_N = (#agree - #disagree)
// over N fair signs only takes values of parity N mod 2.
inline int64_t sign_threshold(uint64_t n_points, double t) {
  double c = std::ceil(t);
  if (c < t) c = t;  // paranoia against rounding in ceil
  int64_t s = static_cast<int64_t>(c);
  if (double(s) < t) ++s;
  if (((s % 2) + 2) % 2 != int64_t(n_points % 2)) ++s;
  return s;
}

// Exact P[S_N >= t] for a sum of N fair +-1 signs, computed in the log domain
// with one lgamma anchor, ratio recurrences for neighbouring binomials, and
// compensated accumulation. Relative error <= 1e-9 over the supported range.
inline double binomial_tail(uint64_t n_points, double t) {
  require(n_points >= 1 && n_points <= (uint64_t(1) << 24), "binomial_tail: N out of range");
  const int64_t s = sign_threshold(n_points, t);
  const int64_t n_i = int64_t(n_points);
  if (s <= -n_i) return 1.0;
  if (s > n_i) return 0.0;
  const uint64_t k0 = uint64_t((n_i + s) / 2);  // P = 2^{-N} sum_{k >= k0} C(N,k)
  const uint64_t km = std::max<uint64_t>(k0, n_points / 2);

  const double log_top = std::lgamma(double(n_points + 1)) - std::lgamma(double(km + 1)) -
                         std::lgamma(double(n_points - km + 1)) - double(n_points) * kLn2;
  double sum = 0.0, comp = 0.0;
  const auto add = [&](double x) {
    const double y = x - comp;
    const double t2 = sum + y;
    comp = (t2 - sum) - y;
    sum = t2;
  };
  add(1.0);
  double rel = 1.0;
  for (uint64_t k = km + 1; k <= n_points; ++k) {  // terms above the anchor
    rel *= double(n_points - k + 1) / double(k);
    add(rel);
    if (rel < 1e-20 * sum) break;
  }
  rel = 1.0;
  for (uint64_t k = km; k > k0; --k) {  // terms below the anchor, down to k0
    rel *= double(k) / double(n_points - k + 1);
    add(rel);
    if (rel < 1e-20 * sum) break;
  }
  const double p = std::exp(log_top + std::log(sum));
  return p < 1.0 ? p : 1.0;
}

// 4^{-alpha C(n,r)} together with the two Bonferroni terms
// |S| pr_lb - (|S|^2/2) joint_tail for a supplied set size, so the dominance
// of the first term can be inspected numerically.
struct LbEventReport {
  LogProb bound;   // 4^{-alpha C(n,r)}
  LogProb term1;   // |S| * pr_lb_bound
  LogProb term2;   // (|S|^2 / 2) * joint_tail_bound
  bool first_dominates = false;
};

inline LbEventReport lb_event_bound(int n, int r, double alpha, double size_s) {
  detail::check_order(n, r, "lb_event_bound");
  require(alpha > 0.0 && alpha < 1.0, "lb_event_bound: alpha must lie in (0, 1)");
  require(size_s >= 1.0, "lb_event_bound: |S| must be >= 1");
  LbEventReport rep;
  rep.bound = LogProb::from_log2(-2.0 * alpha * double(binomial(n, r)));
  const double log2_s = std::log2(size_s);
  rep.term1 = LogProb::from_log2(log2_s + pr_lb_bound(n, r).log2_value);
  rep.term2 = LogProb::from_log2(2.0 * log2_s - 1.0 + joint_tail_bound(n, r).log2_value);
  rep.first_dominates = rep.term1.log2_value > rep.term2.log2_value;
  return rep;
}

// One row of the bound-evaluation table emitted by the CLI.
struct BoundReport {
  std::string name;
  int n = 0;
  int r = 0;
  std::string params;
  double bound_value = 0.0;
  std::optional<double> comparison;
  std::optional<bool> satisfied;
};

inline std::string bound_reports_to_csv(const std::vector<BoundReport>& reports) {
  std::string out = "name,n,r,params,bound,comparison,satisfied\n";
  for (const auto& rep : reports) {
    out += rep.name + "," + std::to_string(rep.n) + "," + std::to_string(rep.r) + "," +
           rep.params + "," + detail::format_g9(rep.bound_value) + ",";
    if (rep.comparison) out += detail::format_g9(*rep.comparison);
    out += ",";
    if (rep.satisfied) out += *rep.satisfied ? "true" : "false";
    out += "\n";
  }
  return out;
}

}  // namespace bfnl
