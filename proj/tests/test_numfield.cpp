#include <doctest.h>

#include <array>
#include <cmath>

#include "support.hpp"
#include "tpadic/error.hpp"
#include "tpadic/numfield.hpp"

using namespace tpadic;

namespace {

AlgebraicInt elem(std::initializer_list<long> c) {
  AlgebraicInt a;
  for (long x : c) a.coords.push_back(Int(x));
  return a;
}

}  // namespace

TEST_SUITE("numfield") {
  TEST_CASE("field invariants") {
    const NumberField gi = NumberField::create(parse_poly("x^2 + 1"));
    CHECK(gi.degree() == 2);
    CHECK(gi.discriminant() == -4);
    CHECK(gi.real_places() == 0);
    CHECK(gi.complex_places() == 1);
    const NumberField q = NumberField::create(parse_poly("x - 1"));
    CHECK(q.degree() == 1);
    CHECK(q.discriminant() == 1);
    const NumberField gold = NumberField::create(parse_poly("x^2 - x - 1"));
    CHECK(gold.discriminant() == 5);
    CHECK(gold.real_places() == 2);
    CHECK_THROWS_AS(NumberField::create(parse_poly("x^2 - 1")), InputError);
  }

  TEST_CASE("supplied integral basis") {
    // Z[(1 + sqrt 5)/2] inside Q(sqrt 5).
    const NumberField K = NumberField::create(parse_poly("x^2 - 5"), RatMatrix{{1, 0}, {Rat(1, 2), Rat(1, 2)}});
    CHECK(K.discriminant() == 5);
    CHECK(K.index() == 2);
    const AlgebraicInt w = elem({0, 1});
    CHECK(K.mul(w, w) == elem({1, 1}));  // w^2 = w + 1
    CHECK_THROWS(NumberField::create(parse_poly("x^2 - 5"), RatMatrix{{1, 0}, {Rat(1, 3), Rat(1, 3)}}));
  }

  TEST_CASE("prime decomposition") {
    const NumberField gi = NumberField::create(parse_poly("x^2 + 1"));
    auto five = decompose_prime(gi, 5);
    REQUIRE(five.size() == 2);
    for (const auto& P : five) {
      CHECK(P.e == 1);
      CHECK(P.f == 1);
      CHECK(P.norm == 5);
      CHECK(valuation(gi, P, P.pi) == 1);
    }
    auto two = decompose_prime(gi, 2);
    REQUIRE(two.size() == 1);
    CHECK(two[0].e == 2);
    CHECK(two[0].f == 1);
    auto three = decompose_prime(gi, 3);
    REQUIRE(three.size() == 1);
    CHECK(three[0].f == 2);
    const NumberField q = NumberField::create(parse_poly("x"));
    auto seven = decompose_prime(q, 7);
    REQUIRE(seven.size() == 1);
    CHECK(seven[0].e * seven[0].f == 1);
    const NumberField K = NumberField::create(parse_poly("x^2 - 5"));  // index 2 in O_K
    CHECK_THROWS_AS(decompose_prime(K, 2), UnsupportedError);
  }

  TEST_CASE("ideal products") {
    const NumberField q = NumberField::create(parse_poly("x"));
    const auto P2 = decompose_prime(q, 2)[0], P3 = decompose_prime(q, 3)[0];
    const std::array<std::pair<PrimeIdealData, unsigned long>, 2> f{{{P2, 3}, {P3, 1}}};
    const IdealHNF a = ideal_product(q, f);
    CHECK(a.norm == 24);
    CHECK(a == principal_ideal(q, elem({24})));
    CHECK(ideal_product(q, std::span<const std::pair<PrimeIdealData, unsigned long>>{}).norm == 1);

    const NumberField gi = NumberField::create(parse_poly("x^2 + 1"));
    const auto five = decompose_prime(gi, 5);
    const std::array<std::pair<PrimeIdealData, unsigned long>, 2> g{{{five[0], 1}, {five[1], 1}}};
    const IdealHNF b = ideal_product(gi, g);
    CHECK(b.norm == 25);
    CHECK(b == principal_ideal(gi, elem({5, 0})));
  }

  TEST_CASE("norm multiplicativity on random factored ideals") {
    const NumberField K = NumberField::create(parse_poly("x^2 + 5"));
    const std::vector<Int> ps{3, 7, 11, 13};
    for (int t = 0; t < 30; ++t) {
      std::vector<std::pair<PrimeIdealData, unsigned long>> fac;
      Int expect = 1;
      for (const auto& p : ps) {
        const auto Ps = decompose_prime(K, p);
        const auto& P = Ps[static_cast<std::size_t>(oracle::uniform(0, static_cast<long>(Ps.size()) - 1))];
        const unsigned long e = static_cast<unsigned long>(oracle::uniform(0, 2));
        if (!e) continue;
        fac.push_back({P, e});
        expect *= ipow(P.norm, e);
      }
      CHECK(ideal_product(K, fac).norm == expect);
    }
  }

  TEST_CASE("CRT") {
    const NumberField q = NumberField::create(parse_poly("x"));
    const std::vector<std::pair<AlgebraicInt, IdealHNF>> r{{elem({1}), principal_ideal(q, elem({4}))},
                                                           {elem({2}), principal_ideal(q, elem({9}))}};
    CHECK(crt_reduce(q, r) == elem({29}));
    const std::vector<std::pair<AlgebraicInt, IdealHNF>> one{{elem({17}), principal_ideal(q, elem({5}))}};
    CHECK(crt_reduce(q, one) == elem({2}));

    const NumberField gi = NumberField::create(parse_poly("x^2 + 1"));
    const auto five = decompose_prime(gi, 5);
    const std::vector<std::pair<AlgebraicInt, IdealHNF>> s{{elem({1, 0}), five[0].ideal}, {elem({0, 1}), five[1].ideal}};
    const AlgebraicInt x = crt_reduce(gi, s);
    CHECK(ideal_contains(five[0].ideal, x - elem({1, 0})));
    CHECK(ideal_contains(five[1].ideal, x - elem({0, 1})));
    const std::vector<std::pair<AlgebraicInt, IdealHNF>> bad{{elem({1}), principal_ideal(q, elem({4}))},
                                                             {elem({2}), principal_ideal(q, elem({6}))}};
    CHECK_THROWS(crt_reduce(q, bad));
  }

  TEST_CASE("CRT is the identity on the quotient") {
    const NumberField gi = NumberField::create(parse_poly("x^2 + 1"));
    const IdealHNF a = decompose_prime(gi, 5)[0].ideal;
    const IdealHNF b = decompose_prime(gi, 3)[0].ideal;
    const IdealHNF ab = ideal_mul(gi, a, b);
    REQUIRE(ab.norm == 45);
    // Exhaustive over the box of residues of the product (norm 45).
    int n = 0;
    for (long u = 0; u < 15; ++u)
      for (long v = 0; v < 15; ++v) {
        const AlgebraicInt x = elem({u, v});
        const std::vector<std::pair<AlgebraicInt, IdealHNF>> r{{ideal_reduce(a, x), a}, {ideal_reduce(b, x), b}};
        const AlgebraicInt y = crt_reduce(gi, r);
        CHECK(ideal_contains(ab, y - x));
        CHECK(y == ideal_reduce(ab, y));
        ++n;
      }
    CHECK(n == 225);
  }

  TEST_CASE("small representatives") {
    const NumberField q = NumberField::create(parse_poly("x"));
    CHECK(small_rep(q, elem({12}), principal_ideal(q, elem({7}))) == elem({-2}));
    CHECK(small_rep(q, elem({12345}), unit_ideal(q)) == elem({0}));

    // Q(i), (3): compare with the exhaustive minimum over all 9 classes.
    const NumberField gi = NumberField::create(parse_poly("x^2 + 1"));
    const IdealHNF a = principal_ideal(gi, elem({3, 0}));
    const AlgebraicInt x = elem({5, 4});
    const AlgebraicInt r = small_rep(gi, x, a);
    CHECK(ideal_contains(a, x - r));
    CHECK(oracle::small_rep_bound_holds(gi, r, a.norm));
    Int best = -1;
    for (long u = -3; u <= 3; ++u)
      for (long v = -3; v <= 3; ++v)
        if (ideal_contains(a, x - elem({u, v})) && (best < 0 || u * u + v * v < best)) best = u * u + v * v;
    const Int got = r.coords[0] * r.coords[0] + r.coords[1] * r.coords[1];
    CHECK(got == best);
  }

  TEST_CASE("small_rep bound over four fields") {
    int failures = 0, cases = 0;
    for (const char* poly : {"x", "x^2 + 1", "x^2 + 5", "x^2 - 2"}) {
      const NumberField K = NumberField::create(parse_poly(poly));
      for (int t = 0; t < 100; ++t) {
        std::vector<std::pair<PrimeIdealData, unsigned long>> fac;
        for (long p : {2L, 3L, 5L, 7L, 11L}) {
          const unsigned long e = static_cast<unsigned long>(oracle::uniform(0, 3));
          if (!e) continue;
          const auto Ps = decompose_prime(K, p);
          fac.push_back({Ps[static_cast<std::size_t>(oracle::uniform(0, static_cast<long>(Ps.size()) - 1))], e});
        }
        const IdealHNF a = ideal_product(K, fac);
        AlgebraicInt x = K.zero();
        for (auto& c : x.coords) c = Int(oracle::uniform(-1000000, 1000000)) * oracle::uniform(1, 1000000);
        const AlgebraicInt r = small_rep(K, x, a);
        ++cases;
        if (!ideal_contains(a, x - r) || !oracle::small_rep_bound_holds(K, r, a.norm)) ++failures;
      }
    }
    CHECK(cases == 400);
    CHECK(failures == 0);
  }

  TEST_CASE("embeddings agree with ring operations") {
    const NumberField K = NumberField::create(parse_poly("x^3 - x - 1"));
    const EmbeddingTable t = K.embeddings(128);
    const AlgebraicInt a = elem({1, 2, -1}), b = elem({0, -3, 4});
    std::vector<Complex> sa, sb, sab;
    std::vector<Real> ea, eb, eab;
    K.embed(a, t, sa, ea);
    K.embed(b, t, sb, eb);
    K.embed(K.mul(a, b), t, sab, eab);
    for (std::size_t v = 0; v < sa.size(); ++v) {
      const std::complex<long double> za(sa[v].re.to_ld(), sa[v].im.to_ld()), zb(sb[v].re.to_ld(), sb[v].im.to_ld()),
          zab(sab[v].re.to_ld(), sab[v].im.to_ld());
      CHECK(std::abs(za * zb - zab) < 1e-15L);
    }
    CHECK(K.trace(K.one()) == 3);
  }
}
