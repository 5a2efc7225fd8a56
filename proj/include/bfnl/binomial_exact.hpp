#pragma once

#include <cmath>
#include <cstdint>

#include <boost/multiprecision/cpp_int.hpp>

#include "bfnl/bounds.hpp"

namespace bfnl {

// Exact big-integer tail P[S_N >= t] = numerator / 2^denominator_log2. Serves
// as the independent oracle for the log-domain binomial_tail; supported up to
// N = 2^16.
struct ExactBinomialTail {
  boost::multiprecision::cpp_int numerator;
  uint32_t denominator_log2 = 0;

  double log2_value() const {
    if (numerator == 0) return -std::numeric_limits<double>::infinity();
    const size_t bits = boost::multiprecision::msb(numerator) + 1;
    if (bits <= 64)
      return std::log2(numerator.convert_to<double>()) - double(denominator_log2);
    const unsigned shift = static_cast<unsigned>(bits - 64);
    const uint64_t top = static_cast<uint64_t>(numerator >> shift);
    return std::log2(double(top)) + double(shift) - double(denominator_log2);
  }

  double value() const {
    if (numerator == 0) return 0.0;
    const size_t bits = boost::multiprecision::msb(numerator) + 1;
    if (bits <= 64)
      return std::ldexp(numerator.convert_to<double>(), -int(denominator_log2));
    const unsigned shift = static_cast<unsigned>(bits - 64);
    const uint64_t top = static_cast<uint64_t>(numerator >> shift);
    return std::ldexp(double(top), int(shift) - int(denominator_log2));
  }
};

inline ExactBinomialTail binomial_tail_exact(uint64_t n_points, double t) {
  require(n_points >= 1 && n_points <= 65536, "binomial_tail_exact: N out of range (max 2^16)");
  using boost::multiprecision::cpp_int;
  ExactBinomialTail res;
  res.denominator_log2 = static_cast<uint32_t>(n_points);
  const int64_t s = sign_threshold(n_points, t);
  const int64_t n_i = int64_t(n_points);
  if (s <= -n_i) {
    res.numerator = cpp_int(1) << n_points;
    return res;
  }
  if (s > n_i) {
    res.numerator = 0;
    return res;
  }
  const uint64_t k0 = uint64_t((n_i + s) / 2);
  cpp_int term = 1;  // C(N, k0), built exactly
  for (uint64_t i = 1; i <= k0; ++i) {
    term *= n_points - k0 + i;
    term /= i;
  }
  cpp_int total = term;
  for (uint64_t k = k0 + 1; k <= n_points; ++k) {
    term *= n_points - k + 1;
    term /= k;
    total += term;
  }
  res.numerator = std::move(total);
  return res;
}

}  // namespace bfnl
