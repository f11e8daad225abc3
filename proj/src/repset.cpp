#include "tpadic/repset.hpp"

#include <algorithm>
#include <string>

#include "tpadic/error.hpp"

namespace tpadic {

namespace {

using Digits = std::vector<GF::Elem>;

// Determinant over a finite field by Gaussian elimination.
GF::Elem gf_det(const GF& F, std::vector<std::vector<GF::Elem>> a) {
  const std::size_t n = a.size();
  GF::Elem det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && a[piv][k] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != k) {
      std::swap(a[piv], a[k]);
      det = F.neg(det);
    }
    det = F.mul(det, a[k][k]);
    const GF::Elem inv = F.inv(a[k][k]);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a[i][k] == 0) continue;
      const GF::Elem m = F.mul(a[i][k], inv);
      for (std::size_t j = k; j < n; ++j) a[i][j] = F.sub(a[i][j], F.mul(m, a[k][j]));
    }
  }
  return det;
}

// O_E = O_F[alpha] iff the coordinate matrix of 1, alpha, ..., alpha^{n-1}
// over an O_F-basis of O_E is invertible mod the maximal ideal of O_F.
bool generates(const LocalField& E, const GaloisAction& G, const LocalElem& alpha) {
  const int n = G.e_rel * G.f_rel;
  if (n == 1) return true;
  const std::uint64_t p = E.p().get_ui();
  std::vector<std::vector<GF::Elem>> rows;
  LocalElem pw = E.one();
  if (G.base == SubField::Qp) {
    const GF Fp = GF::prime_field(p);
    for (int r = 0; r < n; ++r) {
      std::vector<GF::Elem> row;
      for (const auto& c : pw.c) row.push_back(mpz_fdiv_ui(c.get_mpz_t(), p));
      rows.push_back(std::move(row));
      pw = E.mul(pw, alpha);
    }
    return gf_det(Fp, rows) != 0;
  }
  const GF& Fq = E.residue_field();
  const int f = E.f();
  for (int r = 0; r < n; ++r) {
    std::vector<GF::Elem> row;
    for (int j = 0; j < E.e(); ++j) {
      GF::Elem v = 0, w = 1;
      for (int i = 0; i < f; ++i) {
        v += mpz_fdiv_ui(pw.c[static_cast<std::size_t>(j * f + i)].get_mpz_t(), p) * w;
        w *= p;
      }
      row.push_back(v);
    }
    rows.push_back(std::move(row));
    pw = E.mul(pw, alpha);
  }
  return gf_det(Fq, rows) != 0;
}

int decided_valuation(const LocalField& E, const LocalElem& x, const char* what) {
  const int v = E.valuation(x);
  if (v >= x.prec) throw PrecisionError("repset", std::string(what) + " is precision-zero");
  return v;
}

}  // namespace

CConstant c_constant(const LocalField& E, const GaloisAction& G, int d, const LocalElem* fallback) {
  const int g = G.size();
  if (d < 1 || d % g != 0) throw InputError("repset", "d must be a positive multiple of |G|");
  CConstant cc;
  const int e_rel = G.e_rel, e_f = E.sub_e(G.base);
  cc.theta = G.base == SubField::Whole ? E.uniformizer() : E.from_int(E.p());
  if (g == 1) {
    cc.alpha = E.one();
    cc.c0 = 0;
  } else {
    const LocalElem omega = E.teichmuller(E.residue_field().generator());
    cc.alpha = e_rel == 1 ? omega : E.add(E.uniformizer(), omega);
    if (E.valuation(cc.alpha) != 0) cc.alpha = E.add(cc.alpha, E.one());
    if (!generates(E, G, cc.alpha)) {
      cc.alpha = E.add(cc.alpha, E.one());
      if (E.valuation(cc.alpha) != 0 || !generates(E, G, cc.alpha)) {
        if (!fallback) throw InvariantError("repset", "primitive element fails the generation test");
        cc.alpha = *fallback;
        if (E.valuation(cc.alpha) != 0 || !generates(E, G, cc.alpha))
          throw InputError("repset", "supplied alpha is not a unit generating O_E over O_F");
      }
    }
    cc.c0 = 0;
    for (int s = 1; s < g; ++s)
      cc.c0 = std::max(cc.c0, decided_valuation(E, E.sub(cc.alpha, apply_aut(E, G, s, cc.alpha)), "alpha - sigma(alpha)"));
  }
  cc.c1 = g + (cc.c0 + e_rel - 1) / e_rel;
  cc.c = e_rel * (d + cc.c1);
  // c <= e (d + |G| + e_F/(p-1) + 1), compared exactly.
  const Rat bound = Rat(e_rel) * (Rat(d + g + 1) + Rat(e_f) / Rat(E.p() - 1));
  if (Rat(cc.c) > bound) throw InvariantError("repset", "c = " + std::to_string(cc.c) + " exceeds the explicit bound");
  return cc;
}

RepSet build_repset(const LocalField& E, const GaloisAction& G, const CConstant& cc, int d, int k) {
  const int g = G.size();
  if (d < 1 || d % g != 0) throw InputError("repset", "d must be a positive multiple of |G|");
  if (k < 1) throw InputError("repset", "k must be >= 1");
  if (k + cc.c + 5 > E.precision())
    throw PrecisionError("repset", "precision " + std::to_string(E.precision()) + " below k + c + 5 = " + std::to_string(k + cc.c + 5));
  const int e_rel = G.e_rel;
  const int k0 = (k + e_rel - 1) / e_rel;
  RepSet A;
  A.k = k;
  A.c = cc.c;
  A.d = d;
  A.group_order = g;

  const std::vector<LocalElem> residues = E.residue_enum(k);
  std::vector<char> seen(residues.size(), 0);
  std::vector<int> alpha_sep(static_cast<std::size_t>(g), 0);
  for (int s = 1; s < g; ++s)
    alpha_sep[static_cast<std::size_t>(s)] = E.valuation(E.sub(cc.alpha, apply_aut(E, G, s, cc.alpha)));

  std::vector<LocalElem> theta_pow{E.one()};
  auto theta_to = [&](int n) {
    while (static_cast<int>(theta_pow.size()) <= n) theta_pow.push_back(E.mul(theta_pow.back(), cc.theta));
    return theta_pow[static_cast<std::size_t>(n)];
  };

  for (std::size_t idx = 0; idx < residues.size(); ++idx) {
    if (seen[idx]) continue;
    const LocalElem& x = residues[idx];
    int stab = 0;
    for (int s = 0; s < g; ++s) {
      const std::uint64_t j = E.enum_index(apply_aut(E, G, s, x), k);
      seen[j] = 1;
      if (j == idx) ++stab;
    }
    LocalElem a = x;
    if (g > 1) {
      std::vector<int> va(static_cast<std::size_t>(g), 0);
      std::vector<bool> zero(static_cast<std::size_t>(g), false);
      for (int s = 1; s < g; ++s) {
        const LocalElem diff = E.sub(a, apply_aut(E, G, s, a));
        va[static_cast<std::size_t>(s)] = E.valuation(diff);
        zero[static_cast<std::size_t>(s)] = va[static_cast<std::size_t>(s)] >= diff.prec;
      }
      int n0 = -1;
      for (int n = 0; n < g && n0 < 0; ++n) {
        bool ok = true;
        for (int s = 1; s < g && ok; ++s) {
          const int rhs = e_rel * (k0 + n) + alpha_sep[static_cast<std::size_t>(s)];
          if (zero[static_cast<std::size_t>(s)]) {
            if (rhs >= va[static_cast<std::size_t>(s)]) throw PrecisionError("repset", "orbit separation undecidable");
          } else if (va[static_cast<std::size_t>(s)] == rhs) {
            ok = false;
          }
        }
        if (ok) n0 = n;
      }
      if (n0 < 0) throw InvariantError("repset", "no n0 < |G| separates the orbit");
      a = E.add(a, E.mul(theta_to(n0 + k0), cc.alpha));
    }
    std::vector<LocalElem> conj(static_cast<std::size_t>(g));
    for (int s = 0; s < g; ++s) conj[static_cast<std::size_t>(s)] = apply_aut(E, G, s, a);
    const int copies = d / stab;
    for (int j = 0; j < copies; ++j) {
      const LocalElem shift = theta_to(k0 + cc.c1 + j);
      for (int s = 0; s < g; ++s) A.elements.push_back(E.add(conj[static_cast<std::size_t>(s)], shift));
    }
  }
  const RepSetCheck chk = check_repset(E, G, A);
  if (!chk.ok()) throw InvariantError("repset", "constructed set violates a defining property");
  return A;
}

int max_pairwise_valuation(const LocalField& E, std::span<const LocalElem> xs, int L) {
  std::vector<Digits> keys;
  keys.reserve(xs.size());
  for (const auto& x : xs) keys.push_back(E.digits(x, L));
  std::sort(keys.begin(), keys.end());
  int best = 0;
  for (std::size_t i = 1; i < keys.size(); ++i) {
    int l = 0;
    while (l < L && keys[i][static_cast<std::size_t>(l)] == keys[i - 1][static_cast<std::size_t>(l)]) ++l;
    best = std::max(best, l);
  }
  return best;
}

RepSetCheck check_repset(const LocalField& E, const GaloisAction& G, const RepSet& A, bool full) {
  RepSetCheck r;
  const int g = G.size();
  const int L = A.k + A.c + 5;
  std::vector<Digits> keys;
  keys.reserve(A.elements.size());
  for (const auto& x : A.elements) keys.push_back(E.digits(x, L));
  std::vector<Digits> sorted = keys;
  std::sort(sorted.begin(), sorted.end());

  auto prefix_unique = [&](int len) {
    for (std::size_t i = 1; i < sorted.size(); ++i)
      if (std::equal(sorted[i].begin(), sorted[i].begin() + len, sorted[i - 1].begin())) return false;
    return true;
  };
  r.injective = prefix_unique(A.k + A.c);
  r.monotone = prefix_unique(L);

  r.invariant = A.elements.size() % static_cast<std::size_t>(g) == 0;
  r.orbit_lengths = r.invariant;
  for (std::size_t o = 0; r.invariant && o < A.orbit_count(); ++o) {
    const std::size_t base = o * static_cast<std::size_t>(g);
    const LocalElem& x = A.elements[base];
    std::vector<Digits> orbit;
    for (int s = 0; s < g; ++s) {
      Digits d = E.digits(apply_aut(E, G, s, x), L);
      if (d != keys[base + static_cast<std::size_t>(s)]) r.invariant = false;
      orbit.push_back(std::move(d));
    }
    std::sort(orbit.begin(), orbit.end());
    if (std::adjacent_find(orbit.begin(), orbit.end()) != orbit.end()) r.orbit_lengths = false;
  }
  // Closure also for elements not listed first in their orbit.
  for (std::size_t i = 0; r.invariant && i < A.elements.size(); ++i)
    for (int s = 1; s < g; ++s)
      if (!std::binary_search(sorted.begin(), sorted.end(), E.digits(apply_aut(E, G, s, A.elements[i]), L))) {
        r.invariant = false;
        break;
      }

  std::uint64_t count = 1;
  for (int t = 0; t < A.k; ++t) count *= E.q();
  std::vector<int> hits(count, 0);
  for (const auto& x : A.elements) ++hits[E.enum_index(x, A.k)];
  r.d_to_one = true;
  for (int h : hits)
    if (full ? h != A.d : h > A.d) r.d_to_one = false;
  return r;
}

RepSet select_invariant_subset(const LocalField& E, const GaloisAction& G, const RepSet& A, std::size_t count) {
  const std::size_t g = static_cast<std::size_t>(G.size());
  if (count > A.elements.size()) throw InputError("repset", "subset larger than the representative set");
  if (count % g != 0) throw InvariantError("repset", "subset size not divisible by |G|");
  RepSet S = A;
  S.elements.resize(count);
  const RepSetCheck chk = check_repset(E, G, S, false);
  if (!chk.ok()) throw InvariantError("repset", "selected subset is not G-invariant");
  return S;
}

}  // namespace tpadic
