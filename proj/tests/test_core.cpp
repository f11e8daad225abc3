#include <doctest.h>

#include "support.hpp"
#include "tpadic/arith.hpp"
#include "tpadic/error.hpp"
#include "tpadic/gf.hpp"
#include "tpadic/lattice.hpp"
#include "tpadic/zfactor.hpp"
#include "tpadic/zpoly.hpp"

using namespace tpadic;

TEST_SUITE("core") {
  TEST_CASE("integer helpers") {
    CHECK(vp(Int(48), 2) == 4);
    CHECK(vp(Int(0), 3) == kInfiniteValuation);
    CHECK(mod_floor(Int(-7), Int(5)) == 3);
    CHECK(round_div(Int(7), Int(2)) == 4);
    CHECK(round_div(Int(-7), Int(2)) == -3);
    CHECK(inv_mod(Int(3), Int(7)) == 5);
    CHECK_THROWS_AS(inv_mod(Int(2), Int(4)), InvariantError);
    CHECK(is_prime(97));
    CHECK_FALSE(is_prime(91));
    CHECK(next_prime(7) == 11);
    CHECK(parse_rational("0.5") == Rat(1, 2));
    CHECK(parse_rational("1/3") == Rat(1, 3));
    CHECK(parse_rational("2e-1") == Rat(1, 5));
    CHECK(det(IntMatrix{{2, 1}, {1, 3}}) == 5);
  }

  TEST_CASE("polynomial parsing round-trips") {
    for (const char* s : {"x^3 - 2*x + 5", "X^2+1", "-x", "3", "x^4 - 17"}) {
      const ZPoly f = parse_poly(s);
      CHECK(parse_poly(format_poly(f)) == f);
    }
    CHECK(parse_poly("x^2 - x - 1") == ZPoly{-1, -1, 1});
    CHECK_THROWS_AS(parse_poly("x^^2"), InputError);
  }

  TEST_CASE("discriminants") {
    CHECK(discriminant(ZPoly{1, 0, 1}) == -4);
    CHECK(discriminant(ZPoly{-1, -1, 1}) == 5);
    CHECK(discriminant(ZPoly{-2, 0, 0, 1}) == -108);
    CHECK(is_squarefree(ZPoly{-1, 0, 1}));
    CHECK_FALSE(is_squarefree(ZPoly{1, 2, 1}));
  }

  TEST_CASE("taylor shift matches evaluation") {
    for (int t = 0; t < 50; ++t) {
      ZPoly f;
      for (int i = 0; i < 5; ++i) f.push_back(oracle::uniform(-9, 9));
      f.push_back(1);
      const Int r = oracle::uniform(-5, 5), y = oracle::uniform(-5, 5);
      CHECK(eval(taylor_shift(f, r), y) == eval(f, r + y));
    }
  }

  TEST_CASE("finite field axioms in F_4 and F_9") {
    for (auto [p, h] : {std::pair<std::uint64_t, std::vector<std::uint64_t>>{2, {1, 1, 1}}, {3, {1, 0, 1}}}) {
      const GF F(p, h);
      for (GF::Elem a = 0; a < F.size(); ++a) {
        CHECK(F.add(a, F.neg(a)) == 0);
        if (a) CHECK(F.mul(a, F.inv(a)) == 1);
        for (GF::Elem b = 0; b < F.size(); ++b) CHECK(F.mul(a, b) == F.mul(b, a));
      }
      CHECK(F.pow(F.generator(), F.size() - 1) == 1);
    }
  }

  TEST_CASE("irreducibility over F_p") {
    const GF F3 = GF::prime_field(3);
    CHECK(gf_is_irreducible(F3, reduce_mod_p(ZPoly{1, 0, 1}, 3)));
    GFPoly w;
    CHECK_FALSE(gf_is_irreducible(F3, reduce_mod_p(ZPoly{-1, 0, 1}, 3), &w));
    CHECK(gf_degree(w) == 1);
    CHECK(smallest_irreducible(2, 2) == std::vector<std::uint64_t>{1, 1, 1});
    // x^8 - x over F_2 factors as x (x + 1) (x^3 + x + 1) (x^3 + x^2 + 1).
    const auto fac = gf_factor(GF::prime_field(2), reduce_mod_p(ZPoly{0, -1, 0, 0, 0, 0, 0, 0, 1}, 2));
    CHECK(fac.size() == 4);
  }

  TEST_CASE("LLL output is reduced") {
    for (int t = 0; t < 40; ++t) {
      IntMatrix b(4, std::vector<Int>(4));
      for (auto& row : b)
        for (auto& x : row) x = oracle::uniform(-1000, 1000);
      if (det(b) == 0) continue;
      const Int d0 = abs(det(b));
      lll_reduce(b);
      CHECK(is_lll_reduced(b));
      CHECK(abs(det(b)) == d0);
    }
  }

  TEST_CASE("factorization over Q") {
    const auto f = factor_monic(ZPoly{-2, 0, -1, 0, 1});  // (x^2 - 2)(x^2 + 1)
    REQUIRE(f.size() == 2);
    CHECK(f[0] * f[1] == ZPoly{-2, 0, -1, 0, 1});
    CHECK(is_irreducible_over_q(ZPoly{-2, 0, 0, 1}));
    CHECK_FALSE(is_irreducible_over_q(ZPoly{-1, 0, 0, 1}));
  }
}
