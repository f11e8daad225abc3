#include <doctest.h>

#include "support.hpp"
#include "tpadic/oracle.hpp"
#include "tpadic/roots.hpp"
#include "tpadic/verify.hpp"

using namespace tpadic;

namespace {

bool same(const Real& a, const Real& b) { return mpfr_equal_p(a.get(), b.get()) || (mpfr_nan_p(a.get()) && mpfr_nan_p(b.get())); }

std::vector<Complex> coeffs_of(const ZPoly& f, mpfr_prec_t prec) {
  std::vector<Complex> c;
  for (const auto& x : f) c.emplace_back(Real(x, prec), Real(0.0L, prec));
  return c;
}

}  // namespace

TEST_SUITE("kernels") {
  TEST_CASE("Aberth sweep") {
    ZPoly f;
    for (int i = 0; i < 40; ++i) f.push_back(oracle::uniform(-50, 50));
    f.push_back(1);
    const auto c = coeffs_of(f, 256);
    std::vector<Complex> z;
    for (int i = 0; i < 40; ++i)
      z.emplace_back(Real(std::cos(0.3L + i * 0.157L) * 2, 256), Real(std::sin(0.3L + i * 0.157L) * 2, 256));
    std::vector<Complex> ws(40, Complex(256)), wp(40, Complex(256));
    kernels::aberth_corrections(c, z, ws, Exec::serial);
    kernels::aberth_corrections(c, z, wp, Exec::parallel);
    for (int i = 0; i < 40; ++i) {
      CHECK(same(ws[static_cast<std::size_t>(i)].re, wp[static_cast<std::size_t>(i)].re));
      CHECK(same(ws[static_cast<std::size_t>(i)].im, wp[static_cast<std::size_t>(i)].im));
    }
    std::vector<Real> err(41, Real(0.0L, 256)), rs(40, Real(256)), rp(40, Real(256));
    kernels::inclusion_radii(c, err, z, rs, Exec::serial);
    kernels::inclusion_radii(c, err, z, rp, Exec::parallel);
    for (int i = 0; i < 40; ++i) CHECK(same(rs[static_cast<std::size_t>(i)], rp[static_cast<std::size_t>(i)]));
  }

  TEST_CASE("root isolation and Mahler measures") {
    ZPoly f;
    for (int i = 0; i < 24; ++i) f.push_back(oracle::uniform(-9, 9));
    f.push_back(1);
    const MahlerValue s = log_mahler(f, 1e-12L, Exec::serial), p = log_mahler(f, 1e-12L, Exec::parallel);
    CHECK(s.log_mahler == p.log_mahler);
    CHECK(s.error == p.error);
    const RootIsolation a = isolate_roots(f, 128, Exec::serial), b = isolate_roots(f, 128, Exec::parallel);
    REQUIRE(a.roots.size() == b.roots.size());
    for (std::size_t i = 0; i < a.roots.size(); ++i) CHECK(same(a.roots[i].re, b.roots[i].re));
  }

  TEST_CASE("splitting conditions") {
    JobConfig cfg;
    cfg.min_poly = parse_poly("x");
    PrimeSpec s;
    s.p = 2;
    cfg.primes.push_back(s);
    cfg.rho = 24;
    const Construction C = construct(cfg);
    const PrimeRun& R = C.primes[0];
    const LocalPoly g = embed_poly(R.local, C.g.coeffs);
    const int b = R.k + static_cast<int>(C.plan.c.get_si()) - 1;
    std::vector<RootCertificate> rs, rp;
    kernels::splitting_conditions(*R.local.E, g, R.At.elements, b, rs, nullptr, Exec::serial);
    kernels::splitting_conditions(*R.local.E, g, R.At.elements, b, rp, nullptr, Exec::parallel);
    REQUIRE(rs.size() == rp.size());
    for (std::size_t i = 0; i < rs.size(); ++i) {
      CHECK(rs[i].a == rp[i].a);
      CHECK(rs[i].v_g == rp[i].v_g);
      CHECK(rs[i].slack3 == rp[i].slack3);
    }
    const SplittingCertificate cs = verify_splitting(C, 0, C.g.coeffs, Exec::serial);
    const SplittingCertificate cp = verify_splitting(C, 0, C.g.coeffs, Exec::parallel);
    CHECK(cs.certified == cp.certified);
    CHECK(cs.lifted_separation == cp.lifted_separation);
  }

  TEST_CASE("search") {
    SearchOptions so, po;
    so.exec = Exec::serial;
    po.exec = Exec::parallel;
    const SearchRecord a = search_small_height({2}, 3, 6, so), b = search_small_height({2}, 3, 6, po);
    REQUIRE(a.survivors.size() == b.survivors.size());
    for (std::size_t i = 0; i < a.survivors.size(); ++i) {
      CHECK(a.survivors[i].poly == b.survivors[i].poly);
      CHECK(a.survivors[i].min_root_height == b.survivors[i].min_root_height);
    }
    CHECK(a.min_nonzero_height == b.min_nonzero_height);
  }
}
