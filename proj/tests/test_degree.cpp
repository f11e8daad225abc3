#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "tpadic/degree.hpp"
#include "tpadic/error.hpp"

using namespace tpadic;

TEST_SUITE("degree") {
  TEST_CASE("symmetric case") {
    const std::vector<Int> x{2, 2};
    const DirichletResult r = dirichlet_approx(x, 10, Rat(1, 2));
    CHECK(r.k[0] == r.k[1]);
    CHECK(r.r == ipow(2, static_cast<unsigned long>(r.k[0])));
    CHECK(oracle::dirichlet_holds(x, 10, Rat(1, 2), r));
  }

  TEST_CASE("commensurable bases") {
    const std::vector<Int> x{2, 4};
    const DirichletResult r = dirichlet_approx(x, 10, Rat(1, 2));
    CHECK(std::abs(r.k[0] - 2 * r.k[1]) <= 1);
    CHECK(oracle::dirichlet_holds(x, 10, Rat(1, 2), r));
  }

  TEST_CASE("three primes") {
    const std::vector<Int> x{2, 3, 5};
    const DirichletResult r = dirichlet_approx(x, 100, Rat(9, 10));
    CHECK(oracle::dirichlet_holds(x, 100, Rat(9, 10), r));
    CHECK(dirichlet_postconditions(x, 100, Rat(9, 10), r));
  }

  TEST_CASE("random instances") {
    int failures = 0;
    for (int t = 0; t < 200; ++t) {
      const int n = static_cast<int>(oracle::uniform(2, 3));
      std::vector<Int> x;
      for (int i = 0; i < n; ++i) x.push_back(oracle::uniform(2, 30));
      const Rat rho(oracle::uniform(3, 5000));
      const Rat eps(oracle::uniform(20, 95), 100);
      const DirichletResult r = dirichlet_approx(x, rho, eps);
      if (!oracle::dirichlet_holds(x, rho, eps, r)) ++failures;
    }
    CHECK(failures == 0);
  }

  TEST_CASE("one prime") {
    const std::vector<Int> x{2};
    const DegreePlan P = select_degree(1, x, 24, 0, 1, 2);
    CHECK(P.k == std::vector<int>{5});
    CHECK(P.r == 32);
    CHECK(P.degree == 32);
    CHECK(P.c == 16);
    CHECK(P.degree >= 24);
    CHECK(P.degree <= 48);
    CHECK(check_plan(P));

    const std::vector<Int> y{3};
    const DegreePlan Q = select_degree(1, y, 27, 0, 1, 3);
    CHECK(Q.k == std::vector<int>{3});
    CHECK(Q.degree == 27);

    CHECK_THROWS_AS(select_degree(1, x, 2, 0, 1, 2), InputError);
  }

  TEST_CASE("one prime degree window") {
    for (long rho = 6; rho < 3000; rho += 37) {
      const std::vector<Int> x{oracle::uniform(2, 9)};
      const Int d = oracle::uniform(1, 2);
      const Int C = std::max(x[0], Int(2)) * d;
      if (Int(rho) < 3 * C) continue;
      const DegreePlan P = select_degree(1, x, rho, 0, d, C);
      CHECK(P.r * d >= rho);
      CHECK(P.r < x[0] * Rat(rho) / Rat(d));
      CHECK(P.degree <= C * rho);
    }
  }

  TEST_CASE("two primes") {
    const std::vector<Int> x{2, 3};
    const DegreePlan P = select_degree(2, x, 81, Rat(1, 2), 1, 3);
    std::string why;
    CHECK_MESSAGE(check_plan(P, &why), why);
    CHECK(P.degree >= 81);
    CHECK(P.c == 108);
    CHECK_THROWS_AS(select_degree(2, x, 26, Rat(1, 2), 1, 3), InputError);
  }
}
