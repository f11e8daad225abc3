#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "tpadic/error.hpp"
#include "tpadic/oracle.hpp"

using namespace tpadic;

TEST_SUITE("oracle") {
  TEST_CASE("root counts") {
    CHECK(count_padic_roots(parse_poly("x^2 - x"), 3, 20) == 2);
    CHECK(count_padic_roots(parse_poly("x^2 - 17"), 2, 20) == 2);
    CHECK(count_padic_roots(parse_poly("x^2 + 1"), 2, 20) == 0);
    CHECK(count_padic_roots(parse_poly("x^2 + 1"), 5, 20) == 2);
    CHECK_THROWS_AS(count_padic_roots(parse_poly("x^2 + 2*x + 1"), 2, 20), InputError);
    // Roots 0 and 2^20 agree to 20 digits.
    CHECK_THROWS_AS(count_padic_roots(ZPoly{0, -ipow(2, 20), 1}, 2, 20), PrecisionError);
    CHECK(count_padic_roots(ZPoly{0, -ipow(2, 20), 1}, 2, 60) == 2);
  }

  TEST_CASE("root counts against residue enumeration") {
    // A root r with v(f'(r)) = a accounts for p^a solutions mod p^N when N > 2a,
    // and every solution mod p^N comes from a root when v(disc) is small.
    int checked = 0;
    for (long p : {2L, 3L, 5L}) {
      int here = 0;
      while (here < 40) {
        ZPoly f{oracle::uniform(-30, 30), oracle::uniform(-30, 30), oracle::uniform(-30, 30), 1};
        if (!is_squarefree(f)) continue;
        if (oracle::vp_int(discriminant(f), p) > 4) continue;
        const auto sols = oracle::residue_solutions(f, p, 12);
        const int n = count_padic_roots(f, p, 40);
        // Distinct roots have distinct classes mod p^12; count the classes
        // the solutions fall into mod p^(12 - a).
        std::set<std::pair<int, Int>> classes;
        Int pN = ipow(p, 12);
        for (const auto& x : sols) {
          const int a = oracle::vp_int(oracle::eval_mod(oracle::derivative(f), x, pN), p);
          classes.insert({a, mod_floor(x, ipow(p, static_cast<unsigned long>(12 - a)))});
        }
        CHECK(static_cast<int>(classes.size()) == n);
        ++here;
        ++checked;
      }
    }
    CHECK(checked == 120);
  }

  TEST_CASE("degree-one search") {
    const SearchRecord r = search_small_height({2}, 1, 2);
    CHECK(r.survivors.size() == 5);
    CHECK(r.min_height == 0);
  }

  TEST_CASE("search respects the lower bound") {
    const SearchRecord r = search_small_height({5}, 2, 10);
    CHECK(r.has_nonzero);
    CHECK(r.min_nonzero_height >= std::log(5.0L) / 12);
    for (const auto& e : r.survivors) CHECK(count_padic_roots(e.poly, 5, 40) == static_cast<int>(e.poly.size()) - 1);
  }

  TEST_CASE("empty prime list keeps every squarefree polynomial") {
    const SearchRecord r = search_small_height({}, 1, 3);
    CHECK(r.survivors.size() == 7);
    CHECK(r.min_height == 0);
  }

  TEST_CASE("budget marks partial records") {
    SearchOptions o;
    o.budget = 100;
    const SearchRecord r = search_small_height({2}, 3, 10, o);
    CHECK(r.partial);
    CHECK(r.skipped_degrees == std::vector<int>{2, 3});
  }

  TEST_CASE("search order is by degree then coefficients") {
    const SearchRecord r = search_small_height({3}, 2, 3);
    for (std::size_t i = 1; i < r.survivors.size(); ++i) {
      const auto& a = r.survivors[i - 1].poly;
      const auto& b = r.survivors[i].poly;
      if (a.size() != b.size()) {
        CHECK(a.size() < b.size());
        continue;
      }
      const ZPoly ar(a.begin(), a.end() - 1), br(b.begin(), b.end() - 1);
      CHECK(ar < br);
    }
  }
}
