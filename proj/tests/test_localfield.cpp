#include <doctest.h>

#include <set>

#include "support.hpp"
#include "tpadic/error.hpp"
#include "tpadic/localfield.hpp"

using namespace tpadic;

namespace {

LocalField q2(int N) { return LocalField(2, {}, {}, N); }
LocalField unram4(int N) { return LocalField(2, parse_poly("x^2 + x + 1"), {}, N); }
LocalField q3sqrt3(int N) { return LocalField(3, {}, parse_poly("x^2 - 3"), N); }

LocalElem random_elem(const LocalField& E) {
  const auto all = E.residue_enum(1);
  LocalElem x = E.zero();
  LocalElem pw = E.one();
  for (int j = 0; j < E.precision(); ++j) {
    x = E.add(x, E.mul(all[static_cast<std::size_t>(oracle::uniform(0, static_cast<long>(all.size()) - 1))], pw));
    pw = E.mul(pw, E.uniformizer());
  }
  return x;
}

}  // namespace

TEST_SUITE("localfield") {
  TEST_CASE("construction") {
    const LocalField E = q2(16);
    CHECK(E.degree() == 1);
    CHECK(E.valuation(E.from_int(48)) == 4);
    const LocalField U = unram4(12);
    CHECK(U.q() == 4);
    CHECK(U.f() == 2);
    const LocalField R = q3sqrt3(12);
    CHECK(R.e() == 2);
    CHECK(R.valuation(R.uniformizer()) == 1);
    CHECK(R.valuation(R.from_int(3)) == 2);
    CHECK_THROWS_AS(LocalField(3, {}, parse_poly("x^2 - 9"), 10), InputError);
    CHECK_THROWS_AS(LocalField(2, parse_poly("x^2 + 1"), {}, 10), InputError);
  }

  TEST_CASE("residue enumeration") {
    const LocalField E = q2(16);
    const auto r = E.residue_enum(2);
    REQUIRE(r.size() == 4);
    for (int i = 0; i < 4; ++i) CHECK(E.congruent(r[static_cast<std::size_t>(i)], E.from_int(i), 2));
    CHECK(unram4(8).residue_enum(1).size() == 4);
    const LocalField R = q3sqrt3(8);
    const auto s = R.residue_enum(2);
    CHECK(s.size() == 9);
    std::set<std::uint64_t> idx;
    for (const auto& x : s) idx.insert(R.enum_index(x, 2));
    CHECK(idx.size() == 9);
    CHECK_THROWS(R.residue_enum(9));
  }

  TEST_CASE("ring axioms exhaustively mod P^3") {
    for (const LocalField& E : {q2(3), unram4(3), q3sqrt3(3)}) {
      const auto all = E.residue_enum(3);
      for (const auto& x : all)
        for (const auto& y : all) {
          CHECK(E.congruent(E.sub(E.add(x, y), y), x, 3));
          CHECK(E.congruent(E.mul(x, y), E.mul(y, x), 3));
        }
      for (const auto& x : all)
        if (E.valuation(x) == 0) CHECK(E.congruent(E.mul(x, E.inverse_unit(x)), E.one(), 3));
    }
  }

  TEST_CASE("valuation is a valuation") {
    for (const LocalField& E : {q2(20), unram4(20), q3sqrt3(20)}) {
      for (int t = 0; t < 100; ++t) {
        LocalElem x = random_elem(E), y = random_elem(E);
        x = E.mul(x, E.pi_power(static_cast<int>(oracle::uniform(0, 3))));
        y = E.mul(y, E.pi_power(static_cast<int>(oracle::uniform(0, 3))));
        const int vx = E.valuation(x), vy = E.valuation(y);
        if (vx + vy < 18) CHECK(E.valuation(E.mul(x, y)) == vx + vy);
        CHECK(E.valuation(E.add(x, y)) >= std::min(vx, vy));
      }
    }
  }

  TEST_CASE("galois groups") {
    const LocalField U = unram4(12);
    const GaloisAction G = galois_group(U, SubField::Qp);
    REQUIRE(G.size() == 2);
    const LocalElem t = U.teichmuller(U.residue(U.unramified_generator()));
    CHECK(U.congruent(apply_aut(U, G, 1, t), U.mul(t, t), U.precision()));
    CHECK(galois_group(U, SubField::Whole).size() == 1);

    const LocalField R = q3sqrt3(12);
    const GaloisAction H = galois_group(R, SubField::Qp);
    REQUIRE(H.size() == 2);
    CHECK(R.congruent(apply_aut(R, H, 1, R.uniformizer()), R.neg(R.uniformizer()), R.precision()));

    for (const auto* E : {&U, &R}) {
      const GaloisAction A = galois_group(*E, SubField::Qp);
      for (int s = 0; s < A.size(); ++s) {
        const LocalElem x = random_elem(*E), y = random_elem(*E);
        CHECK(E->congruent(apply_aut(*E, A, s, E->mul(x, y)),
                           E->mul(apply_aut(*E, A, s, x), apply_aut(*E, A, s, y)), E->precision() - 2));
        CHECK(E->congruent(apply_aut(*E, A, s, E->from_int(7)), E->from_int(7), E->precision()));
      }
      CHECK(E->congruent(apply_aut(*E, A, 0, E->uniformizer()), E->uniformizer(), E->precision()));
    }
  }

  TEST_CASE("trace lands in the base field") {
    for (const LocalField& E : {unram4(12), q3sqrt3(12)}) {
      const GaloisAction G = galois_group(E, SubField::Qp);
      for (int t = 0; t < 20; ++t) {
        const LocalElem x = random_elem(E);
        LocalElem tr = E.zero();
        for (int s = 0; s < G.size(); ++s) tr = E.add(tr, apply_aut(E, G, s, x));
        CHECK_NOTHROW(f_part(E, SubField::Qp, tr));
      }
      CHECK_THROWS(f_part(E, SubField::Qp, E.f() > 1 ? E.unramified_generator() : E.uniformizer()));
      CHECK(E.congruent(f_part(E, SubField::Qp, E.from_int(5)), E.from_int(5), E.precision()));
    }
  }

  TEST_CASE("hensel lifting") {
    const LocalField E = q2(24);
    const LocalPoly f = to_local_poly(E, parse_poly("x^2 - 17"));
    const HenselResult h = hensel_root(E, f, E.from_int(1), 1, 2);
    CHECK(E.is_precision_zero(poly_eval(E, f, h.root)));
    CHECK(E.valuation(E.sub(h.root, E.from_int(1))) >= 3);
    CHECK(E.congruent(h.root, E.from_int(9), 4));

    const LocalField F3(3, {}, {}, 16);
    const HenselResult one = hensel_root(F3, to_local_poly(F3, parse_poly("x^2 - 1")), F3.one(), 0, 0);
    CHECK(F3.congruent(one.root, F3.one(), F3.precision()));

    const LocalField F5(5, {}, {}, 16);
    try {
      hensel_root(F5, to_local_poly(F5, parse_poly("x^3 - x")), F5.from_int(7), 0, 0);
      FAIL("expected a precondition failure");
    } catch (const PreconditionError& e) {
      CHECK(e.condition() == 1);
    }
  }

  TEST_CASE("local roots of a split polynomial") {
    const LocalField U = unram4(16);
    // The cube roots of unity live in the unramified quadratic extension.
    CHECK(local_roots(U, to_local_poly(U, parse_poly("x^3 - 1"))).size() == 3);
    const LocalField E = q2(16);
    CHECK(local_roots(E, to_local_poly(E, parse_poly("x^2 - 17"))).size() == 2);
    CHECK(local_roots(E, to_local_poly(E, parse_poly("x^2 + 1"))).empty());
  }
}
