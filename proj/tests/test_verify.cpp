#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "tpadic/error.hpp"
#include "tpadic/oracle.hpp"
#include "tpadic/verify.hpp"
#include "tpadic/zfactor.hpp"

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

AlgebraicInt scalar(const Int& x) { return AlgebraicInt{{x}}; }

}  // namespace

TEST_SUITE("verify") {
  TEST_CASE("square roots of 17 in Q2") {
    const LocalField E(2, {}, {}, 30);
    const LocalPoly g = to_local_poly(E, parse_poly("x^2 - 17"));
    const std::vector<LocalElem> x0{E.from_int(1), E.from_int(3)};
    const SplittingCertificate ok = verify_splitting(E, g, x0, 1);
    CHECK(ok.pass());
    CHECK(ok.certified == 2);
    CHECK(ok.separation == 1);
    CHECK(ok.lifted_separation <= 1);
    // b = 2: v(g(3)) = 3 is not above a + b = 3.
    const SplittingCertificate tight = verify_splitting(E, g, x0, 2);
    CHECK_FALSE(tight.pass());
    REQUIRE(tight.roots.size() == 2);
    CHECK(tight.roots[0].cond1);
    CHECK_FALSE(tight.roots[1].cond1);
  }

  TEST_CASE("tampered coefficient fails condition (i)") {
    const Construction C = construct(q2_job(24));
    std::vector<AlgebraicInt> g = C.g.coeffs;
    CHECK(verify_splitting(C, 0, g).pass());
    g[5].coords[0] += 1;
    const SplittingCertificate s = verify_splitting(C, 0, g);
    CHECK_FALSE(s.pass());
    bool some_cond1 = false;
    for (const auto& r : s.roots) some_cond1 |= !r.cond1;
    CHECK(some_cond1);
    CHECK_FALSE(global_condition_failures(C, g).empty());
  }

  TEST_CASE("irreducibility certificates") {
    const NumberField Q = NumberField::create(parse_poly("x"));
    const PrimeIdealData P3 = decompose_prime(Q, 3)[0];
    const std::vector<AlgebraicInt> irr{scalar(1), scalar(0), scalar(1)};
    CHECK(verify_irreducible(Q, P3, irr, irr).pass());
    const std::vector<AlgebraicInt> red{scalar(-1), scalar(0), scalar(1)};
    const IrreducibilityCertificate c = verify_irreducible(Q, P3, red, red);
    CHECK_FALSE(c.irreducible);
    CHECK(c.witness.size() == 2);
    const std::vector<AlgebraicInt> lin{scalar(4), scalar(1)};
    CHECK(verify_irreducible(Q, P3, lin, lin).pass());
    const std::vector<AlgebraicInt> shifted{scalar(2), scalar(0), scalar(1)};
    CHECK_FALSE(verify_irreducible(Q, P3, shifted, irr).congruent);
  }

  TEST_CASE("height bound terms for K = Q, E = Q2") {
    const Construction C = construct(q2_job(24));
    const HeightReport h = height_bound(height_inputs(C));
    CHECK(h.chain_ok());
    CHECK(std::abs(h.main - std::log(2.0L)) < 1e-15L);
    CHECK(h.eps_term == 0);
    CHECK(std::abs(h.error_term - 208 * std::log(32.0L) / 32) < 1e-12L);
    CHECK(std::abs(h.log_B - (std::log(3.0L) + 68 * std::log(2.0L))) < 1e-12L);
    CHECK(std::abs(h.bo_h - (h.log_B + 0.5L * std::log(33.0L)) / 32) < 1e-12L);
  }

  TEST_CASE("exact heights of small polynomials") {
    CHECK(std::abs(exact_height(parse_poly("x - 5")).value - std::log(5.0L)) < 1e-9L);
    CHECK(std::abs(exact_height(parse_poly("x^2 + x + 1")).value) < 1e-9L);
    CHECK(std::abs(exact_height(parse_poly("x^2 - x - 1")).value - 0.5L * std::log((1 + std::sqrt(5.0L)) / 2)) < 1e-9L);
  }

  TEST_CASE("exact heights against eigenvalue Mahler measures") {
    int checked = 0;
    while (checked < 100) {
      const int n = static_cast<int>(oracle::uniform(1, 8));
      ZPoly f;
      for (int i = 0; i < n; ++i) f.push_back(oracle::uniform(-20, 20));
      f.push_back(1);
      if (f[0] == 0 || !is_irreducible_over_q(f)) continue;
      const ExactHeight h = exact_height(f);
      CHECK(std::abs(static_cast<double>(h.value) - oracle::log_mahler_eigen(f) / n) < 1e-8);
      ++checked;
    }
  }

  TEST_CASE("exact height over Q(i) weights complex places twice") {
    const NumberField K = NumberField::create(parse_poly("x^2 + 1"));
    // X - (2 + i): h(2 + i) = log(5) / 2.
    const std::vector<AlgebraicInt> g{AlgebraicInt{{-2, -1}}, K.one()};
    CHECK(std::abs(exact_height(K, g).value - std::log(5.0L) / 2) < 1e-9L);
  }

  TEST_CASE("lower bound values") {
    CHECK(std::abs(lower_bound_value(1, {{2, 1, 1}}) - std::log(2.0L) / 6) < 1e-15L);
    CHECK(std::abs(lower_bound_value(1, {{2, 1, 1}, {3, 1, 1}}) - 0.5L * (std::log(2.0L) / 3 + std::log(3.0L) / 4)) <
          1e-15L);
    CHECK(lower_bound_value(1, {}) == 0);
    CHECK_THROWS_AS(lower_bound_value(2, {{5, 1, 1}}), UnsupportedError);
  }

  TEST_CASE("certified splitting agrees with root counting") {
    const Construction C = construct(q2_job(24));
    ZPoly g;
    for (const auto& c : C.g.coeffs) g.push_back(c.coords[0]);
    CHECK(verify_splitting(C, 0, C.g.coeffs).certified == 32);
    CHECK(count_padic_roots(g, 2, 200) == 32);
  }

  TEST_CASE("every height inequality on constructed instances") {
    for (long rho : {24L, 40L}) {
      const Construction C = construct(q2_job(rho));
      const HeightReport h = height_bound(height_inputs(C));
      const ExactHeight e = exact_height(C.K, C.g.coeffs, 1e-12L, C.g.log_B);
      CHECK(e.value <= h.bo_h);
      CHECK(h.bo_h <= h.total);
      CHECK(e.value >= lower_bound_value(1, {{2, 1, 1}}));
    }
  }
}
