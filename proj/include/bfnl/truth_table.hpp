#pragma once

#include <bit>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "bfnl/error.hpp"

namespace bfnl {

inline constexpr int kMaxVars = 31;             // table indices stay within 32 bits
inline constexpr int kDefaultSpectrumCap = 27;  // memory ceiling for full Walsh spectra
inline constexpr uint32_t kDefaultEnumCap = 30; // ceiling on Gray enumeration width

namespace detail {

// Bit i of kCoordMask[b] is set iff bit b of i is set.
inline constexpr uint64_t kCoordMask[6] = {
    0xAAAAAAAAAAAAAAAAull, 0xCCCCCCCCCCCCCCCCull, 0xF0F0F0F0F0F0F0F0ull,
    0xFF00FF00FF00FF00ull, 0xFFFF0000FFFF0000ull, 0xFFFFFFFF00000000ull,
};

inline int hex_digit_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

// Canonical hex form: ceil(nbits/4) lowercase digits, most significant first.
inline std::string bits_to_hex(const std::vector<uint64_t>& words, uint64_t nbits) {
  static constexpr char digits[] = "0123456789abcdef";
  const uint64_t ndigits = (nbits + 3) / 4;
  std::string out(ndigits, '0');
  for (uint64_t pos = 0; pos < ndigits; ++pos) {
    const unsigned nib = static_cast<unsigned>(words[pos / 16] >> (4 * (pos % 16))) & 0xF;
    out[ndigits - 1 - pos] = digits[nib];
  }
  return out;
}

inline std::vector<uint64_t> hex_to_bits(std::string_view text, uint64_t nbits,
                                         const std::string& what) {
  const uint64_t ndigits = (nbits + 3) / 4;
  require(text.size() == ndigits,
          what + ": expected " + std::to_string(ndigits) + " hex digits, got " +
              std::to_string(text.size()));
  std::vector<uint64_t> words((nbits + 63) / 64, 0);
  for (uint64_t pos = 0; pos < ndigits; ++pos) {
    const char c = text[ndigits - 1 - pos];
    const int v = hex_digit_value(c);
    require(v >= 0, what + ": malformed hex digit '" + std::string(1, c) + "'");
    words[pos / 16] |= uint64_t(v) << (4 * (pos % 16));
  }
  return words;
}

inline std::string message_to_hex(uint64_t message, uint32_t kbits) {
  return bits_to_hex({message}, kbits == 0 ? 1 : kbits);
}

inline uint64_t hex_to_message(std::string_view text, uint32_t kbits) {
  return hex_to_bits(text, kbits == 0 ? 1 : kbits, "message hex")[0];
}

inline std::string format_g9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

}  // namespace detail

// Boolean function on n variables as a bit-packed truth table of 2^n values.
// Index convention: x1 is the least significant bit of the row index, so the
// value f(x1,...,xn) sits at bit x1 + 2*x2 + ... + 2^{n-1}*xn. Storage bits
// beyond index 2^n - 1 are always zero. Instances are immutable in normal use
// and safe to share across threads.
class TruthTable {
 public:
  TruthTable() = default;  // empty placeholder, vars() == 0

  static TruthTable zero(int n) {
    check_vars(n);
    TruthTable t;
    t.n_ = n;
    t.words_.assign(word_count_for(n), 0);
    return t;
  }

  static TruthTable ones(int n) {
    TruthTable t = zero(n);
    for (auto& w : t.words_) w = ~uint64_t{0};
    t.words_.back() &= last_word_mask(n);
    return t;
  }

  // Table of the monomial prod_{b set in mask} x_{b+1}: bit i = [(i & mask) == mask].
  static TruthTable monomial(int n, uint32_t mask) {
    TruthTable t = zero(n);
    require((uint64_t(mask) >> n) == 0, "monomial: mask has variables beyond n");
    uint64_t pattern = ~uint64_t{0};
    for (int b = 0; b < 6 && b < n; ++b)
      if (mask & (1u << b)) pattern &= detail::kCoordMask[b];
    const uint64_t high = mask >> 6;
    for (uint64_t w = 0; w < t.words_.size(); ++w)
      if ((w & high) == high) t.words_[w] = pattern;
    t.words_.back() &= last_word_mask(n);
    return t;
  }

  // Table of the linear function <mask, x> = XOR of x_{b+1} over set bits b.
  static TruthTable linear(int n, uint32_t mask) {
    TruthTable t = zero(n);
    require((uint64_t(mask) >> n) == 0, "linear: mask has variables beyond n");
    uint64_t pattern = 0;
    for (int b = 0; b < 6 && b < n; ++b)
      if (mask & (1u << b)) pattern ^= detail::kCoordMask[b];
    const uint64_t high = mask >> 6;
    for (uint64_t w = 0; w < t.words_.size(); ++w)
      t.words_[w] = (std::popcount(w & high) & 1) ? ~pattern : pattern;
    t.words_.back() &= last_word_mask(n);
    return t;
  }

  static TruthTable from_hex(std::string_view text, int n) {
    check_vars(n);
    TruthTable t;
    t.n_ = n;
    t.words_ = detail::hex_to_bits(text, uint64_t(1) << n, "truth table hex");
    require((t.words_.back() & ~last_word_mask(n)) == 0,
            "truth table hex: set bits at index >= 2^n");
    return t;
  }

  static TruthTable from_words(int n, std::vector<uint64_t> words) {
    check_vars(n);
    require(words.size() == word_count_for(n), "from_words: wrong word count");
    require((words.back() & ~last_word_mask(n)) == 0, "from_words: nonzero padding bits");
    TruthTable t;
    t.n_ = n;
    t.words_ = std::move(words);
    return t;
  }

  int vars() const { return n_; }
  uint64_t size() const { return uint64_t(1) << n_; }
  uint64_t word_count() const { return words_.size(); }
  const std::vector<uint64_t>& words() const { return words_; }

  bool get(uint64_t index) const { return (words_[index >> 6] >> (index & 63)) & 1; }

  void set(uint64_t index, bool value) {
    require(index < size(), "set: index out of range");
    const uint64_t bit = uint64_t(1) << (index & 63);
    if (value)
      words_[index >> 6] |= bit;
    else
      words_[index >> 6] &= ~bit;
  }

  std::string to_hex() const { return detail::bits_to_hex(words_, size()); }

  TruthTable& operator^=(const TruthTable& other) {
    require(n_ == other.n_, "xor: dimension mismatch");
    for (size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
    return *this;
  }

  friend TruthTable operator^(TruthTable a, const TruthTable& b) {
    a ^= b;
    return a;
  }

  TruthTable complement() const {
    TruthTable t = *this;
    for (auto& w : t.words_) w = ~w;
    t.words_.back() &= last_word_mask(n_);
    return t;
  }

  bool operator==(const TruthTable&) const = default;

 private:
  static void check_vars(int n) {
    require(n >= 1 && n <= kMaxVars,
            "variable count n must satisfy 1 <= n <= " + std::to_string(kMaxVars));
  }
  static uint64_t word_count_for(int n) { return ((uint64_t(1) << n) + 63) / 64; }
  static uint64_t last_word_mask(int n) {
    const uint64_t rem = (uint64_t(1) << n) & 63;
    return rem == 0 ? ~uint64_t{0} : (uint64_t(1) << rem) - 1;
  }

  int n_ = 0;
  std::vector<uint64_t> words_;
};

// |{x : f(x) = 1}|
inline uint64_t weight(const TruthTable& f) {
  uint64_t w = 0;
  for (uint64_t word : f.words()) w += std::popcount(word);
  return w;
}

// Hamming distance |{x : f(x) != g(x)}| = weight(f XOR g).
inline uint64_t distance(const TruthTable& f, const TruthTable& g) {
  require(f.vars() == g.vars(), "distance: dimension mismatch");
  uint64_t d = 0;
  const auto& a = f.words();
  const auto& b = g.words();
  for (size_t i = 0; i < a.size(); ++i) d += std::popcount(a[i] ^ b[i]);
  return d;
}

// <(-1)^g, (-1)^h> = 2^n - 2 d(g,h)
inline int64_t scalar_product_signs(const TruthTable& g, const TruthTable& h) {
  return int64_t(g.size()) - 2 * int64_t(distance(g, h));
}

// Y = sum_x (-1)^{f(x)+g(x)} = 2^n - 2 d(f,g)
inline int64_t correlation_y(const TruthTable& f, const TruthTable& g) {
  return scalar_product_signs(f, g);
}

// Binary table file: 8-byte magic "BFTT0001", 1 byte n, then ceil(2^n/8)
// bytes with bit i of byte floor(i/8) (LSB first) holding f at index i.
inline constexpr char kTableFileMagic[8] = {'B', 'F', 'T', 'T', '0', '0', '0', '1'};

inline void write_table(std::ostream& out, const TruthTable& f) {
  require(f.vars() >= 1, "write_table: empty table");
  out.write(kTableFileMagic, 8);
  const char n = static_cast<char>(f.vars());
  out.write(&n, 1);
  const uint64_t nbytes = (f.size() + 7) / 8;
  for (uint64_t j = 0; j < nbytes; ++j) {
    const char byte = static_cast<char>((f.words()[j / 8] >> (8 * (j % 8))) & 0xFF);
    out.write(&byte, 1);
  }
  require(out.good(), "write_table: write failed");
}

inline TruthTable read_table(std::istream& in) {
  char magic[8];
  in.read(magic, 8);
  require(in.gcount() == 8 && std::string_view(magic, 8) == std::string_view(kTableFileMagic, 8),
          "read_table: bad magic");
  char nc = 0;
  in.read(&nc, 1);
  require(in.gcount() == 1, "read_table: truncated header");
  const int n = static_cast<unsigned char>(nc);
  require(n >= 1 && n <= kMaxVars, "read_table: n out of range");
  const uint64_t nbits = uint64_t(1) << n;
  const uint64_t nbytes = (nbits + 7) / 8;
  std::vector<uint64_t> words((nbits + 63) / 64, 0);
  for (uint64_t j = 0; j < nbytes; ++j) {
    char byte = 0;
    in.read(&byte, 1);
    require(in.gcount() == 1, "read_table: truncated payload");
    words[j / 8] |= uint64_t(static_cast<unsigned char>(byte)) << (8 * (j % 8));
  }
  if (nbits < 8)
    require((words[0] >> nbits) == 0, "read_table: nonzero padding bits");
  return TruthTable::from_words(n, std::move(words));
}

}  // namespace bfnl
