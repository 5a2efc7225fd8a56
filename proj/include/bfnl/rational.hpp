#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>

#include "bfnl/error.hpp"

namespace bfnl {

// Small exact rational over int64, used for boundary-exact threshold
// comparisons (census queries, separated-set tolerances). Always reduced,
// denominator positive.
struct Rational {
  int64_t num = 0;
  int64_t den = 1;

  static Rational make(int64_t num, int64_t den) {
    require(den != 0, "Rational: zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    return Rational{num, den};
  }

  static Rational from_int(int64_t v) { return Rational{v, 1}; }

  // Accepts "p/q", a plain integer, or a decimal like "0.25".
  static Rational parse(std::string_view text) {
    require(!text.empty(), "Rational: empty string");
    bool neg = false;
    size_t i = 0;
    if (text[0] == '-' || text[0] == '+') {
      neg = text[0] == '-';
      i = 1;
    }
    int64_t int_part = 0, frac_part = 0, frac_scale = 1, denom = 0;
    int state = 0;  // 0: integer digits, 1: fraction digits, 2: denominator digits
    bool any_digit = false;
    for (; i < text.size(); ++i) {
      const char c = text[i];
      if (c >= '0' && c <= '9') {
        any_digit = true;
        if (state == 0) {
          require(int_part < (int64_t{1} << 56), "Rational: value too large");
          int_part = int_part * 10 + (c - '0');
        } else if (state == 1) {
          require(frac_scale < (int64_t{1} << 56), "Rational: too many decimals");
          frac_part = frac_part * 10 + (c - '0');
          frac_scale *= 10;
        } else {
          require(denom < (int64_t{1} << 56), "Rational: value too large");
          denom = denom * 10 + (c - '0');
        }
      } else if (c == '.' && state == 0) {
        state = 1;
      } else if (c == '/' && state == 0) {
        state = 2;
      } else {
        throw Error("Rational: malformed value '" + std::string(text) + "'");
      }
    }
    require(any_digit, "Rational: malformed value '" + std::string(text) + "'");
    Rational r;
    if (state == 2)
      r = make(int_part, denom);
    else
      r = make(int_part * frac_scale + frac_part, frac_scale);
    if (neg) r.num = -r.num;
    return r;
  }

  double to_double() const { return double(num) / double(den); }

  bool operator==(const Rational&) const = default;
};

// Sign of a - b, exact.
inline int cmp(const Rational& a, const Rational& b) {
  const __int128 l = static_cast<__int128>(a.num) * b.den;
  const __int128 r = static_cast<__int128>(b.num) * a.den;
  return l < r ? -1 : (l > r ? 1 : 0);
}

}  // namespace bfnl
