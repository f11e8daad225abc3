#include "tpadic/zfactor.hpp"

#include <algorithm>

#include "tpadic/error.hpp"
#include "tpadic/gf.hpp"
#include "tpadic/roots.hpp"

namespace tpadic {

namespace {

bool irreducible_mod_some_prime(const ZPoly& f) {
  const Int disc = discriminant(f);
  int tried = 0;
  for (std::uint64_t p = 3; tried < 24 && p < 2000; p = next_prime(p)) {
    if (disc % Int(static_cast<unsigned long>(p)) == 0) continue;
    ++tried;
    if (gf_is_irreducible(GF::prime_field(p), reduce_mod_p(f, p))) return true;
  }
  return false;
}

bool nearest_integer(const Real& x, Int& out) {
  Real r(x.prec());
  mpfr_round(r.get(), x.get());
  Real d = abs(x - r);
  if (!(d < Real(0.25L, x.prec()))) return false;
  mpz_t z;
  mpz_init(z);
  mpfr_get_z(z, r.get(), MPFR_RNDN);
  out = Int(z);
  mpz_clear(z);
  return true;
}

bool poly_less(const ZPoly& a, const ZPoly& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = a.size(); i-- > 0;)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

}  // namespace

std::vector<ZPoly> factor_monic(const ZPoly& f) {
  if (!is_monic(f)) throw InputError("zfactor", "polynomial must be monic");
  if (degree(f) <= 1) return {f};
  if (!is_squarefree(f)) throw InputError("zfactor", "polynomial must be squarefree");
  if (irreducible_mod_some_prime(f)) return {f};

  RootIsolation iso = isolate_roots(f);
  const mpfr_prec_t prec = iso.precision;
  std::vector<std::size_t> remaining(iso.roots.size());
  for (std::size_t i = 0; i < remaining.size(); ++i) remaining[i] = i;
  ZPoly rest = f;
  std::vector<ZPoly> out;

  std::size_t s = 1;
  while (2 * s <= remaining.size()) {
    bool found = false;
    std::vector<bool> pick(remaining.size(), false);
    std::fill(pick.begin(), pick.begin() + static_cast<long>(s), true);
    do {
      std::vector<Complex> prod{Complex(prec)};
      mpfr_set_ui(prod[0].re.get(), 1, MPFR_RNDN);
      for (std::size_t t = 0; t < remaining.size(); ++t) {
        if (!pick[t]) continue;
        const Complex& z = iso.roots[remaining[t]];
        std::vector<Complex> next(prod.size() + 1, Complex(prec));
        for (std::size_t k = 0; k < prod.size(); ++k) {
          next[k + 1] += prod[k];
          next[k] -= prod[k] * z;
        }
        prod = std::move(next);
      }
      ZPoly h(prod.size());
      bool ok = true;
      for (std::size_t k = 0; k < prod.size() && ok; ++k) {
        ok = abs(prod[k].im) < Real(0.25L, prec) && nearest_integer(prod[k].re, h[k]);
      }
      ZPoly q;
      if (ok && divide_exact(rest, h, q)) {
        out.push_back(h);
        rest = q;
        std::vector<std::size_t> keep;
        for (std::size_t t = 0; t < remaining.size(); ++t)
          if (!pick[t]) keep.push_back(remaining[t]);
        remaining = std::move(keep);
        found = true;
        break;
      }
    } while (std::prev_permutation(pick.begin(), pick.end()));
    if (!found) ++s;
  }
  if (degree(rest) >= 1) out.push_back(rest);
  std::sort(out.begin(), out.end(), poly_less);
  return out;
}

bool is_irreducible_over_q(const ZPoly& f) { return factor_monic(f).size() == 1; }

}  // namespace tpadic
