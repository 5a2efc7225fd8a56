#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "bfnl/rng.hpp"
#include "bfnl/truth_table.hpp"

using bfnl::TruthTable;

namespace {

// Definitional bit-loop oracles, independent of the word-level paths.
uint64_t naive_weight(const TruthTable& f) {
  uint64_t w = 0;
  for (uint64_t i = 0; i < f.size(); ++i) w += f.get(i);
  return w;
}

uint64_t naive_distance(const TruthTable& f, const TruthTable& g) {
  uint64_t d = 0;
  for (uint64_t i = 0; i < f.size(); ++i) d += f.get(i) != g.get(i);
  return d;
}

TruthTable random_table(uint64_t stream, int n) {
  return bfnl::sample_uniform({0x5EEDBA5Eu, stream}, n);
}

}  // namespace

TEST_CASE("parse_hex basic tables") {
  const TruthTable and2 = TruthTable::from_hex("8", 2);  // x1*x2: only f(1,1) = 1
  CHECK(and2.get(3));
  CHECK_FALSE(and2.get(0));
  CHECK_FALSE(and2.get(1));
  CHECK_FALSE(and2.get(2));
  CHECK(and2 == TruthTable::monomial(2, 3));

  const TruthTable ones = TruthTable::from_hex("F", 2);
  CHECK(ones == TruthTable::ones(2));

  // "A" = bits 1 and 3 set: f(x) = x1 under the LSB-first index convention
  const TruthTable x1 = TruthTable::from_hex("A", 2);
  CHECK(x1 == TruthTable::monomial(2, 1));
  CHECK(x1 == TruthTable::linear(2, 1));
}

TEST_CASE("hex round trips are the identity") {
  for (int n : {1, 2, 3, 5, 6, 7, 10}) {
    const TruthTable f = random_table(n, n);
    CHECK(TruthTable::from_hex(f.to_hex(), n) == f);
  }
  // canonical form is lowercase; parsing accepts either case
  CHECK(TruthTable::from_hex("8ff0", 4).to_hex() == "8ff0");
  CHECK(TruthTable::from_hex("8FF0", 4) == TruthTable::from_hex("8ff0", 4));
}

TEST_CASE("parse_hex errors") {
  CHECK_THROWS_AS(TruthTable::from_hex("8", 0), bfnl::Error);    // n out of range
  CHECK_THROWS_AS(TruthTable::from_hex("8", 32), bfnl::Error);   // n out of range
  CHECK_THROWS_AS(TruthTable::from_hex("88", 2), bfnl::Error);   // length mismatch
  CHECK_THROWS_AS(TruthTable::from_hex("", 2), bfnl::Error);     // length mismatch
  CHECK_THROWS_AS(TruthTable::from_hex("g", 2), bfnl::Error);    // malformed digit
  CHECK_THROWS_AS(TruthTable::from_hex("4", 1), bfnl::Error);    // set bit at index >= 2^n
  CHECK_NOTHROW(TruthTable::from_hex("3", 1));
}

TEST_CASE("weight examples and oracle") {
  CHECK(bfnl::weight(TruthTable::zero(3)) == 0);
  CHECK(bfnl::weight(TruthTable::ones(3)) == 8);
  CHECK(bfnl::weight(TruthTable::from_hex("8", 2)) == 1);
  for (int n : {1, 4, 7, 9}) {
    const TruthTable f = random_table(100 + n, n);
    CHECK(bfnl::weight(f) == naive_weight(f));
  }
}

TEST_CASE("distance examples, symmetry, triangle inequality") {
  const TruthTable f = random_table(7, 5);
  CHECK(bfnl::distance(f, f) == 0);
  CHECK(bfnl::distance(f, f.complement()) == 32);
  CHECK(bfnl::distance(TruthTable::from_hex("8", 2), TruthTable::zero(2)) == 1);
  CHECK_THROWS_AS(bfnl::distance(TruthTable::zero(2), TruthTable::zero(3)), bfnl::Error);

  for (uint64_t trial = 0; trial < 50; ++trial) {
    const int n = 1 + int(trial % 8);
    const TruthTable a = random_table(3 * trial, n);
    const TruthTable b = random_table(3 * trial + 1, n);
    const TruthTable c = random_table(3 * trial + 2, n);
    CHECK(bfnl::distance(a, b) == naive_distance(a, b));
    CHECK(bfnl::distance(a, b) == bfnl::distance(b, a));
    CHECK(bfnl::distance(a, c) <= bfnl::distance(a, b) + bfnl::distance(b, c));
    CHECK(bfnl::distance(a, b) == bfnl::weight(a ^ b));
  }
}

TEST_CASE("scalar product of sign vectors") {
  const TruthTable g = random_table(11, 4);
  CHECK(bfnl::scalar_product_signs(g, g) == 16);
  CHECK(bfnl::scalar_product_signs(g, g.complement()) == -16);
  // <x1, x2> at n = 2: the four-term sum vanishes
  CHECK(bfnl::scalar_product_signs(TruthTable::linear(2, 1), TruthTable::linear(2, 2)) == 0);
}

TEST_CASE("correlation equals 2^n - 2d") {
  const TruthTable f = random_table(13, 6);
  CHECK(bfnl::correlation_y(f, f) == 64);
  CHECK(bfnl::correlation_y(f, f.complement()) == -64);
  CHECK(bfnl::correlation_y(TruthTable::from_hex("8", 2), TruthTable::zero(2)) == 2);
  for (uint64_t trial = 0; trial < 30; ++trial) {
    const int n = 1 + int(trial % 9);
    const TruthTable a = random_table(900 + 2 * trial, n);
    const TruthTable b = random_table(900 + 2 * trial + 1, n);
    CHECK(bfnl::correlation_y(a, b) ==
          int64_t(a.size()) - 2 * int64_t(naive_distance(a, b)));
  }
}

TEST_CASE("monomial tables have weight 2^{n-deg}") {
  for (int n : {2, 4, 7}) {
    for (uint32_t mask = 0; mask < (1u << n); ++mask) {
      const TruthTable t = TruthTable::monomial(n, mask);
      CHECK(bfnl::weight(t) == (uint64_t(1) << (n - std::popcount(mask))));
    }
  }
}

TEST_CASE("linear tables match the parity definition") {
  for (int n : {3, 7}) {
    for (uint32_t mask : {0u, 1u, 5u, (1u << n) - 1}) {
      const TruthTable t = TruthTable::linear(n, mask);
      for (uint64_t i = 0; i < t.size(); ++i)
        CHECK(t.get(i) == (std::popcount(uint32_t(i) & mask) & 1));
    }
  }
}

TEST_CASE("binary table file round trip") {
  for (int n : {1, 2, 3, 6, 8}) {
    const TruthTable f = random_table(40 + n, n);
    std::stringstream buf;
    bfnl::write_table(buf, f);
    CHECK(bfnl::read_table(buf) == f);
  }
}

TEST_CASE("binary table file errors") {
  std::stringstream bad_magic(std::string("XXXX0001\x03", 9));
  CHECK_THROWS_AS(bfnl::read_table(bad_magic), bfnl::Error);

  std::stringstream truncated;
  bfnl::write_table(truncated, TruthTable::ones(6));
  std::string bytes = truncated.str();
  bytes.resize(bytes.size() - 1);
  std::stringstream short_file(bytes);
  CHECK_THROWS_AS(bfnl::read_table(short_file), bfnl::Error);

  // padding bits beyond 2^n must be zero
  std::string padded("BFTT0001", 8);
  padded.push_back(char(1));     // n = 1
  padded.push_back(char(0xFF));  // bits 2..7 nonzero
  std::stringstream padded_file(padded);
  CHECK_THROWS_AS(bfnl::read_table(padded_file), bfnl::Error);
}
