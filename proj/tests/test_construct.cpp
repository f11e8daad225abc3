#include <doctest.h>

#include "support.hpp"
#include "tpadic/construct.hpp"
#include "tpadic/error.hpp"

using namespace tpadic;

namespace {

JobConfig q2_job(long rho) {
  JobConfig cfg;
  cfg.min_poly = parse_poly("x");
  PrimeSpec s;
  s.p = 2;
  cfg.primes.push_back(s);
  cfg.rho = rho;
  return cfg;
}

ZPoly rational_poly(const std::vector<AlgebraicInt>& g) {
  ZPoly f;
  for (const auto& c : g) f.push_back(c.coords.at(0));
  return f;
}

}  // namespace

TEST_SUITE("construct") {
  TEST_CASE("exponent m") {
    // (2^5 - 1)/(2 - 1) + 5 + 2 * 16.
    CHECK(compute_m(1, 1, 2, 5, 16) == 68);
    CHECK(compute_m(4, 2, 4, 2, 3) == 2 * (5 + 2 + 6));
    CHECK_THROWS(compute_m(3, 2, 2, 1, 1));
  }

  TEST_CASE("anchor prime") {
    std::vector<PrimeSpec> ps;
    CHECK(smallest_excluded_prime(ps) == 2);
    ps.push_back(PrimeSpec{2});
    CHECK(smallest_excluded_prime(ps) == 3);
    ps.push_back(PrimeSpec{3});
    CHECK(smallest_excluded_prime(ps) == 5);
  }

  TEST_CASE("anchor polynomial is irreducible mod p0") {
    const NumberField K = NumberField::create(parse_poly("x"));
    const PrimeIdealData P3 = decompose_prime(K, 3)[0];
    for (std::uint64_t seed = 1; seed < 20; ++seed) {
      const ZPoly g = rational_poly(choose_g0(K, P3, 2, seed));
      REQUIRE(g.size() == 3);
      CHECK(g[2] == 1);
      // Degree 2 with no root mod 3.
      for (long r = 0; r < 3; ++r) CHECK(oracle::eval_mod(g, r, 3) != 0);
    }
    CHECK(choose_g0(K, P3, 1, 7).size() == 2);
    CHECK(choose_g0(K, P3, 5, 11) == choose_g0(K, P3, 5, 11));
  }

  TEST_CASE("local polynomial over Q2") {
    const LocalField E(2, {}, {}, 20);
    RepSet A;
    A.elements = {E.from_int(4), E.from_int(5)};
    const LocalPoly g = build_local_poly(E, SubField::Qp, A);
    REQUIRE(g.size() == 3);
    CHECK(E.congruent(g[0], E.from_int(20), E.precision()));
    CHECK(E.congruent(g[1], E.from_int(-9), E.precision()));
    CHECK(E.congruent(g[2], E.one(), E.precision()));
  }

  TEST_CASE("local polynomial in the unramified quadratic is fixed by Frobenius") {
    const LocalField E(2, parse_poly("x^2 + x + 1"), {}, 24);
    const GaloisAction G = galois_group(E, SubField::Qp);
    const RepSet A = build_repset(E, G, c_constant(E, G, 2), 2, 1);
    const RepSet S = select_invariant_subset(E, G, A, 4);
    const LocalPoly g = build_local_poly(E, SubField::Qp, S);
    CHECK(g.size() == 5);
    for (const auto& c : g) CHECK(E.congruent(apply_aut(E, G, 1, c), c, c.prec));
  }

  TEST_CASE("approximation to O_K") {
    const NumberField Q = NumberField::create(parse_poly("x"));
    PrimeSpec s;
    s.p = 2;
    const LocalSetup L = setup_local(Q, s, 30);
    const AlgebraicInt z = approximate_element(Q, L, L.E->from_int(-9), 5);
    CHECK(z.coords[0] == -9);
    // Truncation of the unit 1/3 = ...10101011 in Z_2 to 6 digits.
    const LocalElem third = L.E->inverse_unit(L.E->from_int(3));
    const AlgebraicInt t = approximate_element(Q, L, third, 6);
    CHECK(oracle::eval_mod(ZPoly{t.coords[0] * 3 - 1}, 0, 64) == 0);

    const NumberField K = NumberField::create(parse_poly("x^2 + 1"));
    PrimeSpec g;
    g.p = 5;
    const LocalSetup M = setup_local(K, g, 30);
    for (int i = 0; i < 10; ++i) {
      const LocalElem y = M.E->from_int(oracle::uniform(-100000, 100000));
      const AlgebraicInt w = approximate_element(K, M, y, 4);
      CHECK(M.E->valuation(M.E->sub(M.iota(*M.E, w), y)) >= 4);
    }
  }

  TEST_CASE("local setup rejects what it cannot build") {
    const NumberField K = NumberField::create(parse_poly("x^2 + 1"));
    PrimeSpec s;
    s.p = 5;
    s.index = 2;
    CHECK_THROWS_AS(setup_local(K, s, 20), InputError);
    PrimeSpec r;
    r.p = 3;
    r.e = 2;  // ramified over F with no Eisenstein polynomial
    CHECK_THROWS_AS(setup_local(NumberField::create(parse_poly("x")), r, 20), InputError);
  }

  TEST_CASE("full construction, K = Q, E = Q2, rho = 24") {
    const Construction C = construct(q2_job(24));
    CHECK(C.plan.degree == 32);
    CHECK(C.p0 == 3);
    REQUIRE(C.primes.size() == 1);
    CHECK(C.primes[0].m == 68);
    const ZPoly g = rational_poly(C.g.coeffs);
    const ZPoly g0 = rational_poly(C.g0);
    const ZPoly g1 = rational_poly(C.primes[0].gi);
    REQUIRE(g.size() == 33);
    CHECK(g.back() == 1);
    const Int two68 = ipow(2, 68), bound = 3 * two68;
    for (std::size_t j = 0; j < g.size(); ++j) {
      CHECK(mod_floor(g[j] - g0[j], 3) == 0);
      CHECK(mod_floor(g[j] - g1[j], two68) == 0);
      CHECK(abs(g[j]) <= bound);
    }
    // Derivative bound of the local polynomial, d ((x^k - 1)/(x - 1) + c).
    CHECK(C.primes[0].derivative_bound == 31 + 16);
    CHECK(C.primes[0].max_derivative_valuation <= 47);
  }

  TEST_CASE("derivative valuations against the closed form") {
    const Construction C = construct(q2_job(24));
    const PrimeRun& R = C.primes[0];
    const LocalField& E = *R.local.E;
    const std::vector<int> v = derivative_valuations(E, R.At.elements, R.N);
    for (std::size_t i = 0; i < v.size(); ++i) {
      // Direct product of differences.
      int direct = 0;
      for (std::size_t j = 0; j < v.size(); ++j)
        if (i != j) direct += E.valuation(E.sub(R.At.elements[i], R.At.elements[j]));
      CHECK(v[i] == direct);
      CHECK(Int(v[i]) <= R.derivative_bound);
    }
  }

  TEST_CASE("determinism and seeds") {
    const Construction a = construct(q2_job(24)), b = construct(q2_job(24));
    CHECK(a.g.coeffs == b.g.coeffs);
    CHECK(a.g0_hash == b.g0_hash);
    JobConfig other = q2_job(24);
    other.seed = 2;
    CHECK(construct(other).g0_hash != a.g0_hash);
  }

  TEST_CASE("no primes") {
    JobConfig cfg;
    cfg.min_poly = parse_poly("x");
    cfg.rho = 5;
    const Construction C = construct(cfg);
    CHECK(C.p0 == 2);
    CHECK(C.plan.degree >= 5);
    const ZPoly g = rational_poly(C.g.coeffs), g0 = rational_poly(C.g0);
    for (std::size_t j = 0; j < g.size(); ++j) CHECK(mod_floor(g[j] - g0[j], 2) == 0);
    for (const auto& c : g) CHECK(abs(c) <= 2);
  }

  TEST_CASE("invalid jobs") {
    JobConfig dup = q2_job(24);
    dup.primes.push_back(dup.primes[0]);
    CHECK_THROWS_AS(construct(dup), InputError);
    JobConfig np = q2_job(24);
    np.primes[0].p = 9;
    CHECK_THROWS_AS(construct(np), InputError);
    CHECK_THROWS_AS(construct(q2_job(2)), InputError);
  }

  TEST_CASE("two primes with an explicit small plan") {
    JobConfig cfg;
    cfg.min_poly = parse_poly("x");
    cfg.primes = {PrimeSpec{2}, PrimeSpec{3}};
    cfg.rho = 27;
    cfg.eps = Rat(1, 2);
    cfg.eps_text = "0.5";
    DegreePlan P;
    P.n = 2;
    P.x = {2, 3};
    P.rho = 27;
    P.eps = Rat(1, 2);
    P.d = 1;
    P.C = 3;
    P.c = 4 * 27;
    P.k = {2, 1};
    P.r = 3;
    P.degree = 3;
    const Construction C = construct_with_plan(cfg, P);
    REQUIRE(C.primes.size() == 2);
    CHECK(C.p0 == 5);
    const ZPoly g = rational_poly(C.g.coeffs);
    CHECK(g.size() == 4);
    for (std::size_t i = 0; i < 2; ++i) {
      const Int mod = ipow(C.primes[i].spec.p, C.primes[i].m.get_ui());
      const ZPoly gi = rational_poly(C.primes[i].gi);
      for (std::size_t j = 0; j < g.size(); ++j) CHECK(mod_floor(g[j] - gi[j], mod) == 0);
    }
    DegreePlan bad = P;
    bad.degree = 4;
    CHECK_THROWS(construct_with_plan(cfg, bad));
  }

  TEST_CASE("over budget") {
    JobConfig cfg;
    cfg.min_poly = parse_poly("x");
    cfg.primes = {PrimeSpec{2}, PrimeSpec{3}};
    cfg.rho = 27;
    cfg.eps = Rat(1, 2);
    CHECK_THROWS_AS(construct(cfg), ResourceError);
  }
}
