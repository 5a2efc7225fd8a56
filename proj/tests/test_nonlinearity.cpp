#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "bfnl/nonlinearity.hpp"
#include "bfnl/rng.hpp"

using bfnl::NonlinearityResult;
using bfnl::RMCodeSpec;
using bfnl::TruthTable;

namespace {

TruthTable bent4() {  // x1 x2 XOR x3 x4
  return TruthTable::monomial(4, 0b0011) ^ TruthTable::monomial(4, 0b1100);
}

void check_witness(const TruthTable& f, const NonlinearityResult& res) {
  const auto basis = bfnl::build_basis(RMCodeSpec::make(res.n, res.r));
  CHECK(bfnl::distance(f, bfnl::encode(basis, res.best_message)) == res.value);
}

}  // namespace

TEST_CASE("order-1 nonlinearity of affine functions is zero") {
  for (uint32_t mask : {0u, 1u, 7u}) {
    const TruthTable f = TruthTable::linear(4, mask);
    CHECK(bfnl::nonlinearity_order1(f).value == 0);
    CHECK(bfnl::nonlinearity_order1(f.complement()).value == 0);
  }
}

TEST_CASE("order-1 nonlinearity examples") {
  const NonlinearityResult bent = bfnl::nonlinearity_order1(bent4());
  CHECK(bent.value == 6);  // 2^{n-1} - 2^{n/2-1} for the quadratic bent function
  CHECK(bent.y == 4);
  check_witness(bent4(), bent);

  const NonlinearityResult and2 = bfnl::nonlinearity_order1(TruthTable::from_hex("8", 2));
  CHECK(and2.value == 1);  // spectrum [2,2,2,-2]
  CHECK(and2.y == 2);
  check_witness(TruthTable::from_hex("8", 2), and2);
}

TEST_CASE("order-1 respects the spectrum cap") {
  CHECK_THROWS_AS(bfnl::nonlinearity_order1(TruthTable::zero(6), 5), bfnl::Error);
}

TEST_CASE("exhaustive nonlinearity examples") {
  // any codeword of RM(r,n) is at distance 0
  const auto basis = bfnl::build_basis(RMCodeSpec::make(4, 2));
  const TruthTable cw = bfnl::encode(basis, 0b10110010101);
  CHECK(bfnl::nonlinearity_exhaustive(cw, 2).value == 0);

  // wt(x1 x2 x3) = 1 and the function has degree 3, so N_2 = 1
  const NonlinearityResult res = bfnl::nonlinearity_exhaustive(TruthTable::monomial(3, 7), 2);
  CHECK(res.value == 1);
  check_witness(TruthTable::monomial(3, 7), res);

  // dual-path equivalence on the bent function
  const NonlinearityResult ex = bfnl::nonlinearity_exhaustive(bent4(), 1);
  CHECK(ex.value == 6);
  CHECK(ex.value == bfnl::nonlinearity_order1(bent4()).value);
  check_witness(bent4(), ex);
}

TEST_CASE("exhaustive nonlinearity errors") {
  CHECK_THROWS_WITH(bfnl::nonlinearity_exhaustive(TruthTable::zero(4), 5),
                    Catch::Matchers::ContainsSubstring("r"));
  CHECK_THROWS_AS(bfnl::nonlinearity_exhaustive(TruthTable::zero(5), 2, 1, 10), bfnl::Error);
}

TEST_CASE("order-1 equals exhaustive r=1 on every function at n=4") {
  for (uint64_t f = 0; f < 65536; ++f) {
    const TruthTable tt = TruthTable::from_words(4, {f});
    const auto fast = bfnl::nonlinearity_order1(tt);
    const auto slow = bfnl::nonlinearity_exhaustive(tt, 1);
    REQUIRE(fast.value == slow.value);
  }
}

TEST_CASE("order-1 equals exhaustive r=1 on random functions, n in 5..10") {
  for (uint64_t trial = 0; trial < 500; ++trial) {
    const int n = 5 + int(trial % 6);
    const TruthTable f = bfnl::sample_uniform({0xF00Du, trial}, n);
    const auto fast = bfnl::nonlinearity_order1(f);
    const auto slow = bfnl::nonlinearity_exhaustive(f, 1);
    REQUIRE(fast.value == slow.value);
    check_witness(f, fast);
    check_witness(f, slow);
  }
}

TEST_CASE("nonlinearity is monotone decreasing in r") {
  for (uint64_t trial = 0; trial < 20; ++trial) {
    const int n = 4 + int(trial % 3);
    const TruthTable f = bfnl::sample_uniform({0x3CADu, trial}, n);
    uint32_t prev = bfnl::nonlinearity_exhaustive(f, 0).value;
    for (int r = 1; r <= n && bfnl::rm_dimension(n, r) <= 30; ++r) {
      const uint32_t cur = bfnl::nonlinearity_exhaustive(f, r).value;
      CHECK(cur <= prev);
      prev = cur;
    }
  }
}

TEST_CASE("nonlinearity is invariant under XOR with codewords") {
  const auto basis = bfnl::build_basis(RMCodeSpec::make(5, 2));
  bfnl::Xoshiro256StarStar rng({0xBEEFu, 1});
  for (int trial = 0; trial < 10; ++trial) {
    const TruthTable f = bfnl::sample_uniform({0xBEEFu, uint64_t(trial)}, 5);
    const TruthTable g = bfnl::encode(basis, rng.next() & 0xFFFF);
    CHECK(bfnl::nonlinearity_exhaustive(f, 2).value ==
          bfnl::nonlinearity_exhaustive(f ^ g, 2).value);
    CHECK(bfnl::nonlinearity_exhaustive(f, 2).value ==
          bfnl::nonlinearity_exhaustive(f.complement(), 2).value);
  }
}

TEST_CASE("search is independent of the worker count, including the witness") {
  for (uint64_t trial = 0; trial < 5; ++trial) {
    const TruthTable f = bfnl::sample_uniform({0x10B5u, trial}, 6);
    const auto a = bfnl::nonlinearity_exhaustive(f, 2, 1);
    const auto b = bfnl::nonlinearity_exhaustive(f, 2, 3);
    const auto c = bfnl::nonlinearity_exhaustive(f, 2, 7);
    CHECK(a.value == b.value);
    CHECK(a.best_message == b.best_message);
    CHECK(a.value == c.value);
    CHECK(a.best_message == c.best_message);
  }
}

TEST_CASE("normalized statistic") {
  NonlinearityResult res;
  res.n = 10;
  res.r = 1;

  res.value = 512;  // = 2^{n-1}
  CHECK(bfnl::normalized_statistic(res) == 0.0);

  res.value = 0;
  CHECK(bfnl::normalized_statistic(res) ==
        Catch::Approx(512.0 / std::sqrt(512.0 * 10.0 * bfnl::kLn2)).epsilon(1e-12));

  res.value = 452;
  CHECK(bfnl::normalized_statistic(res) ==
        Catch::Approx(60.0 / std::sqrt(512.0 * 10.0 * bfnl::kLn2)).epsilon(1e-12));
  CHECK(bfnl::normalized_statistic(res) == Catch::Approx(1.0071723).epsilon(1e-6));

  res.r = 11;
  CHECK_THROWS_AS(bfnl::normalized_statistic(res), bfnl::Error);
}

TEST_CASE("normalized statistic equals y/lambda") {
  for (uint64_t trial = 0; trial < 40; ++trial) {
    const int r = trial % 2 ? 1 : 2;
    const int n = 4 + int(trial % (r == 2 ? 4 : 5));  // keep k <= 30
    const TruthTable f = bfnl::sample_uniform({0xA11CEu, trial}, n);
    const auto res = bfnl::nonlinearity_exhaustive(f, r);
    CHECK(bfnl::normalized_statistic(res) == Catch::Approx(res.ratio).epsilon(1e-12));
    // identity: stat * sqrt(2^{n-1} C ln 2) + N_r = 2^{n-1}
    const double back = bfnl::normalized_statistic(res) *
                            std::sqrt(std::ldexp(double(bfnl::binomial(n, res.r)) * bfnl::kLn2,
                                                 n - 1)) +
                        double(res.value);
    CHECK(back == Catch::Approx(std::ldexp(1.0, n - 1)).margin(1e-9));
  }
}
