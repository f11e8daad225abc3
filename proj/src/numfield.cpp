#include "tpadic/numfield.hpp"

#include <algorithm>
#include <cmath>

#include "tpadic/error.hpp"
#include "tpadic/lattice.hpp"
#include "tpadic/roots.hpp"
#include "tpadic/zfactor.hpp"

namespace tpadic {

namespace {

constexpr long kScaleBits = 128;

std::vector<Rat> mulmod_power(const std::vector<Rat>& a, const std::vector<Rat>& b, const ZPoly& f) {
  const std::size_t m = f.size() - 1;
  std::vector<Rat> prod(2 * m - 1, Rat(0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) prod[i + j] += a[i] * b[j];
  for (std::size_t k = prod.size(); k-- > m;) {
    Rat c = prod[k];
    if (c == 0) continue;
    for (std::size_t i = 0; i < m; ++i) prod[k - m + i] -= c * Rat(f[i]);
    prod[k] = 0;
  }
  prod.resize(m);
  return prod;
}

RatMatrix inverse(RatMatrix a) {
  const std::size_t n = a.size();
  RatMatrix inv(n, std::vector<Rat>(n, Rat(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && a[piv][k] == 0) ++piv;
    if (piv == n) throw InputError("numfield", "integral basis is singular");
    std::swap(a[k], a[piv]);
    std::swap(inv[k], inv[piv]);
    Rat d = a[k][k];
    for (std::size_t j = 0; j < n; ++j) {
      a[k][j] /= d;
      inv[k][j] /= d;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || a[i][k] == 0) continue;
      Rat f = a[i][k];
      for (std::size_t j = 0; j < n; ++j) {
        a[i][j] -= f * a[k][j];
        inv[i][j] -= f * inv[k][j];
      }
    }
  }
  return inv;
}

std::vector<Int> power_sums(const ZPoly& f, int count) {
  const int m = degree(f);
  std::vector<Int> s(static_cast<std::size_t>(count), Int(0));
  if (count > 0) s[0] = m;
  for (int k = 1; k < count; ++k) {
    Int acc = 0;
    for (int i = 1; i <= std::min(k - 1, m); ++i) acc += f[static_cast<std::size_t>(m - i)] * s[static_cast<std::size_t>(k - i)];
    if (k <= m) acc += k * f[static_cast<std::size_t>(m - k)];
    s[static_cast<std::size_t>(k)] = -acc;
  }
  return s;
}

bool is_integer(const Rat& x) { return x.get_den() == 1; }

long double log_abs(const Int& x) {
  if (sgn(x) == 0) return -INFINITY;
  long e = 0;
  double d = mpz_get_d_2exp(&e, x.get_mpz_t());
  return std::log(std::fabs(static_cast<long double>(d))) + static_cast<long double>(e) * std::log(2.0L);
}

// Extended gcd with g >= 0.
void xgcd(const Int& a, const Int& b, Int& g, Int& s, Int& t) {
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
}

// Row HNF of the lattice spanned by rows together with D * Z^m.
IntMatrix hnf_mod(const std::vector<std::vector<Int>>& rows, const Int& D, std::size_t m) {
  IntMatrix H(m, std::vector<Int>(m, Int(0)));
  for (std::size_t i = 0; i < m; ++i) H[i][i] = D;
  for (const auto& row : rows) {
    std::vector<Int> v(m);
    for (std::size_t j = 0; j < m; ++j) v[j] = mod_floor(row[j], D);
    for (std::size_t k = 0; k < m; ++k) {
      if (v[k] == 0) continue;
      Int g, s, t;
      xgcd(H[k][k], v[k], g, s, t);
      Int a = H[k][k] / g, b = v[k] / g;
      std::vector<Int> nk(m), nv(m);
      for (std::size_t j = k; j < m; ++j) {
        nk[j] = s * H[k][j] + t * v[j];
        nv[j] = a * v[j] - b * H[k][j];
      }
      nk[k] = g;
      nv[k] = 0;
      for (std::size_t j = k + 1; j < m; ++j) {
        nk[j] = mod_floor(nk[j], D);
        nv[j] = mod_floor(nv[j], D);
      }
      for (std::size_t j = k; j < m; ++j) {
        H[k][j] = nk[j];
        v[j] = nv[j];
      }
    }
  }
  for (std::size_t k = m; k-- > 0;) {
    for (std::size_t i = 0; i < k; ++i) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), H[i][k].get_mpz_t(), H[k][k].get_mpz_t());
      if (q != 0)
        for (std::size_t j = k; j < m; ++j) H[i][j] -= q * H[k][j];
    }
  }
  return H;
}

IdealHNF make_ideal(IntMatrix H) {
  IdealHNF I;
  I.norm = 1;
  for (std::size_t i = 0; i < H.size(); ++i) I.norm *= H[i][i];
  I.basis = std::move(H);
  return I;
}

// HNF with unimodular transform: H = U * S, nonzero rows of H first.
void hnf_transform(IntMatrix S, std::size_t m, IntMatrix& H, IntMatrix& U) {
  const std::size_t rows = S.size();
  U.assign(rows, std::vector<Int>(rows, Int(0)));
  for (std::size_t i = 0; i < rows; ++i) U[i][i] = 1;
  std::size_t r = 0;
  for (std::size_t k = 0; k < m && r < rows; ++k) {
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (S[i][k] == 0) continue;
      Int g, s, t;
      xgcd(S[r][k], S[i][k], g, s, t);
      Int a = S[r][k] / g, b = S[i][k] / g;
      for (std::size_t j = 0; j < m; ++j) {
        Int x = s * S[r][j] + t * S[i][j];
        Int y = a * S[i][j] - b * S[r][j];
        S[r][j] = x;
        S[i][j] = y;
      }
      for (std::size_t j = 0; j < rows; ++j) {
        Int x = s * U[r][j] + t * U[i][j];
        Int y = a * U[i][j] - b * U[r][j];
        U[r][j] = x;
        U[i][j] = y;
      }
    }
    if (S[r][k] == 0) continue;
    if (S[r][k] < 0) {
      for (auto& x : S[r]) x = -x;
      for (auto& x : U[r]) x = -x;
    }
    for (std::size_t i = 0; i < r; ++i) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), S[i][k].get_mpz_t(), S[r][k].get_mpz_t());
      if (q == 0) continue;
      for (std::size_t j = 0; j < m; ++j) S[i][j] -= q * S[r][j];
      for (std::size_t j = 0; j < rows; ++j) U[i][j] -= q * U[r][j];
    }
    ++r;
  }
  H = std::move(S);
}

}  // namespace

AlgebraicInt& AlgebraicInt::operator+=(const AlgebraicInt& o) {
  for (std::size_t i = 0; i < coords.size(); ++i) coords[i] += o.coords[i];
  return *this;
}

AlgebraicInt& AlgebraicInt::operator-=(const AlgebraicInt& o) {
  for (std::size_t i = 0; i < coords.size(); ++i) coords[i] -= o.coords[i];
  return *this;
}

bool AlgebraicInt::is_zero() const {
  for (const auto& c : coords)
    if (c != 0) return false;
  return true;
}

NumberField NumberField::create(const ZPoly& min_poly, std::optional<RatMatrix> integral_basis) {
  NumberField K;
  if (!is_monic(min_poly) || tpadic::degree(min_poly) < 1) throw InputError("numfield", "min_poly must be monic of degree >= 1");
  K.f_ = min_poly;
  K.m_ = tpadic::degree(min_poly);
  const std::size_t m = static_cast<std::size_t>(K.m_);
  if (K.m_ > 1) {
    if (!is_squarefree(min_poly)) throw InputError("numfield", "min_poly is not squarefree");
    if (!is_irreducible_over_q(min_poly)) throw InputError("numfield", "min_poly is reducible over Q");
  }
  if (integral_basis) {
    if (integral_basis->size() != m) throw InputError("numfield", "integral basis must have m rows");
    for (const auto& row : *integral_basis)
      if (row.size() != m) throw InputError("numfield", "integral basis rows must have m entries");
    K.basis_ = *integral_basis;
  } else {
    K.basis_.assign(m, std::vector<Rat>(m, Rat(0)));
    for (std::size_t i = 0; i < m; ++i) K.basis_[i][i] = 1;
  }
  K.basis_inv_ = inverse(K.basis_);
  for (std::size_t k = 0; k < m; ++k)
    if (!is_integer(K.basis_inv_[0][k])) throw InputError("numfield", "integral basis does not contain 1");

  K.table_.assign(m, std::vector<std::vector<Int>>(m, std::vector<Int>(m, Int(0))));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      std::vector<Rat> prod = mulmod_power(K.basis_[i], K.basis_[j], K.f_);
      for (std::size_t k = 0; k < m; ++k) {
        Rat c = 0;
        for (std::size_t a = 0; a < m; ++a) c += prod[a] * K.basis_inv_[a][k];
        if (!is_integer(c)) throw InputError("numfield", "integral basis not closed under multiplication");
        K.table_[i][j][k] = c.get_num();
      }
    }
  }

  std::vector<Int> s = power_sums(K.f_, static_cast<int>(2 * m));
  std::vector<Int> tr(m);
  for (std::size_t k = 0; k < m; ++k) {
    Rat t = 0;
    for (std::size_t a = 0; a < m; ++a) t += K.basis_[k][a] * Rat(s[a]);
    if (!is_integer(t)) throw InputError("numfield", "basis element has non-integral trace");
    tr[k] = t.get_num();
  }
  IntMatrix gram(m, std::vector<Int>(m, Int(0)));
  IntMatrix power_gram(m, std::vector<Int>(m, Int(0)));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t k = 0; k < m; ++k) gram[i][j] += K.table_[i][j][k] * tr[k];
      power_gram[i][j] = s[i + j];
    }
  K.disc_ = det(gram);
  Int disc_f = det(power_gram);
  if (K.disc_ == 0) throw InputError("numfield", "degenerate trace form");
  Int sq = disc_f / K.disc_;
  if (sq * K.disc_ != disc_f || sgn(sq) < 0 || !mpz_perfect_square_p(sq.get_mpz_t()))
    throw InputError("numfield", "integral basis does not contain Z[theta]");
  K.index_ = sqrt(sq);

  RootIsolation iso = isolate_roots(K.f_, 256);
  Real tiny = mul_2si(Real(1.0L, iso.precision), -64);
  int real = 0;
  for (std::size_t i = 0; i < iso.roots.size(); ++i) {
    if (!(iso.radii[i] < tiny)) throw PrecisionError("numfield", "embedding residual above 2^-64");
    if (abs(iso.roots[i].im) <= iso.radii[i]) ++real;
  }
  K.r_ = real;
  K.s_ = (K.m_ - real) / 2;
  if (K.r_ + 2 * K.s_ != K.m_) throw InvariantError("numfield", "place count inconsistent");
  return K;
}

AlgebraicInt NumberField::zero() const { return AlgebraicInt{std::vector<Int>(static_cast<std::size_t>(m_), Int(0))}; }

AlgebraicInt NumberField::one() const {
  AlgebraicInt x = zero();
  for (std::size_t k = 0; k < x.coords.size(); ++k) x.coords[k] = basis_inv_[0][k].get_num();
  return x;
}

AlgebraicInt NumberField::from_int(const Int& v) const { return v * one(); }

AlgebraicInt NumberField::theta_power(int k) const {
  std::vector<Rat> c(static_cast<std::size_t>(m_), Rat(0));
  if (k < m_) {
    c[static_cast<std::size_t>(k)] = 1;
    return from_power_coords(c);
  }
  const AlgebraicInt t = m_ == 1 ? from_int(-f_[0]) : theta_power(1);
  return pow(t, static_cast<unsigned long>(k));
}

AlgebraicInt NumberField::from_power_coords(const std::vector<Rat>& c) const {
  AlgebraicInt x = zero();
  for (std::size_t k = 0; k < x.coords.size(); ++k) {
    Rat v = 0;
    for (std::size_t a = 0; a < c.size(); ++a) v += c[a] * basis_inv_[a][k];
    if (!is_integer(v)) throw InvariantError("numfield", "element is not integral");
    x.coords[k] = v.get_num();
  }
  return x;
}

std::vector<Rat> NumberField::to_power_coords(const AlgebraicInt& x) const {
  std::vector<Rat> c(static_cast<std::size_t>(m_), Rat(0));
  for (std::size_t j = 0; j < x.coords.size(); ++j) {
    if (x.coords[j] == 0) continue;
    for (std::size_t a = 0; a < c.size(); ++a) c[a] += Rat(x.coords[j]) * basis_[j][a];
  }
  return c;
}

AlgebraicInt NumberField::mul(const AlgebraicInt& a, const AlgebraicInt& b) const {
  const std::size_t m = static_cast<std::size_t>(m_);
  AlgebraicInt r = zero();
  if (m == 1) {
    r.coords[0] = a.coords[0] * b.coords[0] * table_[0][0][0];
    return r;
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (a.coords[i] == 0) continue;
    for (std::size_t j = 0; j < m; ++j) {
      if (b.coords[j] == 0) continue;
      Int ab = a.coords[i] * b.coords[j];
      for (std::size_t k = 0; k < m; ++k)
        if (table_[i][j][k] != 0) r.coords[k] += ab * table_[i][j][k];
    }
  }
  return r;
}

AlgebraicInt NumberField::pow(const AlgebraicInt& a, unsigned long e) const {
  AlgebraicInt r = one(), b = a;
  while (e) {
    if (e & 1) r = mul(r, b);
    e >>= 1;
    if (e) b = mul(b, b);
  }
  return r;
}

Int NumberField::trace(const AlgebraicInt& a) const {
  std::vector<Int> s = power_sums(f_, m_);
  std::vector<Rat> c = to_power_coords(a);
  Rat t = 0;
  for (std::size_t k = 0; k < c.size(); ++k) t += c[k] * Rat(s[k]);
  return t.get_num();
}

long double NumberField::log_delta() const {
  const long double m = m_;
  return 1.5L * std::log(m) + (m * (m - 1) / 2) * std::log(2.0L) + 0.5L * log_abs(disc_);
}

Real NumberField::delta(mpfr_prec_t prec) const {
  Real m(Int(m_), prec);
  Real d = m * sqrt(m);
  d = mul_2si(d, static_cast<long>(m_) * (m_ - 1) / 2);
  return d * sqrt(Real(Int(abs(disc_)), prec));
}

EmbeddingTable NumberField::embeddings(mpfr_prec_t prec) const {
  EmbeddingTable t;
  RootIsolation iso = isolate_roots(f_, prec);
  const mpfr_prec_t wp = iso.precision;
  t.precision = wp;
  std::vector<std::size_t> reals, complexes;
  for (std::size_t i = 0; i < iso.roots.size(); ++i) {
    if (abs(iso.roots[i].im) <= iso.radii[i])
      reals.push_back(i);
    else if (iso.roots[i].im.sign() > 0)
      complexes.push_back(i);
  }
  std::sort(reals.begin(), reals.end(), [&](std::size_t a, std::size_t b) { return iso.roots[a].re < iso.roots[b].re; });
  std::sort(complexes.begin(), complexes.end(), [&](std::size_t a, std::size_t b) {
    if (iso.roots[a].re < iso.roots[b].re) return true;
    if (iso.roots[b].re < iso.roots[a].re) return false;
    return iso.roots[a].im < iso.roots[b].im;
  });
  std::vector<std::size_t> order = reals;
  order.insert(order.end(), complexes.begin(), complexes.end());
  const std::size_t m = static_cast<std::size_t>(m_);
  for (std::size_t idx : order) {
    Complex z = iso.roots[idx];
    const Real& rad = iso.radii[idx];
    const bool real = abs(z.im) <= rad;
    if (real) z.im = Real(wp);
    std::vector<Complex> powers(m, Complex(wp));
    mpfr_set_ui(powers[0].re.get(), 1, MPFR_RNDN);
    for (std::size_t a = 1; a < m; ++a) powers[a] = powers[a - 1] * z;
    Real az = abs(z) + rad;
    // |d/dz z^a| <= a (|z|+r)^{a-1}
    std::vector<Real> dpow(m, Real(wp));
    Real pw(1.0L, wp);
    for (std::size_t a = 1; a < m; ++a) {
      dpow[a] = Real(Int(static_cast<unsigned long>(a)), wp) * pw;
      pw *= az;
    }
    std::vector<Complex> vals;
    std::vector<Real> errs;
    for (std::size_t j = 0; j < m; ++j) {
      Complex v(wp);
      Real e(wp), mag(wp);
      for (std::size_t a = 0; a < m; ++a) {
        if (basis_[j][a] == 0) continue;
        Real c(basis_[j][a], wp);
        v += scale(powers[a], c);
        e += abs(c) * dpow[a] * rad;
        mag += abs(c) * abs(powers[a]);
      }
      e += mul_2si(mag, -static_cast<long>(wp) + 8);
      vals.push_back(v);
      errs.push_back(e);
    }
    t.values.push_back(std::move(vals));
    t.errors.push_back(std::move(errs));
    t.is_real.push_back(real);
  }
  if (t.values.size() != static_cast<std::size_t>(r_ + s_)) throw InvariantError("numfield", "embedding count mismatch");
  return t;
}

void NumberField::embed(const AlgebraicInt& x, const EmbeddingTable& t, std::vector<Complex>& out,
                        std::vector<Real>& err) const {
  out.clear();
  err.clear();
  const mpfr_prec_t wp = t.precision;
  for (std::size_t pl = 0; pl < t.values.size(); ++pl) {
    Complex v(wp);
    Real e(wp), mag(wp);
    for (std::size_t j = 0; j < x.coords.size(); ++j) {
      if (x.coords[j] == 0) continue;
      Real c(x.coords[j], wp);
      Complex term = scale(t.values[pl][j], c);
      v += term;
      e += abs(c) * t.errors[pl][j];
      mag += abs(term);
    }
    e += mul_2si(mag, -static_cast<long>(wp) + 8);
    out.push_back(v);
    err.push_back(e);
  }
}

IdealHNF unit_ideal(const NumberField& K) {
  const std::size_t m = static_cast<std::size_t>(K.degree());
  IntMatrix H(m, std::vector<Int>(m, Int(0)));
  for (std::size_t i = 0; i < m; ++i) H[i][i] = 1;
  return make_ideal(std::move(H));
}

IdealHNF ideal_from_generators(const NumberField& K, std::span<const AlgebraicInt> gens, const Int& modulus) {
  if (modulus == 0) throw InvariantError("numfield", "zero HNF modulus");
  const std::size_t m = static_cast<std::size_t>(K.degree());
  std::vector<std::vector<Int>> rows;
  for (const auto& g : gens) {
    for (std::size_t j = 0; j < m; ++j) {
      AlgebraicInt w = K.zero();
      w.coords[j] = 1;
      rows.push_back(K.mul(g, w).coords);
    }
  }
  return make_ideal(hnf_mod(rows, abs(modulus), m));
}

IdealHNF principal_ideal(const NumberField& K, const AlgebraicInt& x) {
  const std::size_t m = static_cast<std::size_t>(K.degree());
  IntMatrix mult(m);
  for (std::size_t j = 0; j < m; ++j) {
    AlgebraicInt w = K.zero();
    w.coords[j] = 1;
    mult[j] = K.mul(x, w).coords;
  }
  Int n = abs(det(mult));
  if (n == 0) throw InputError("numfield", "principal ideal of zero");
  AlgebraicInt gens[1] = {x};
  return ideal_from_generators(K, gens, n);
}

IdealHNF ideal_mul(const NumberField& K, const IdealHNF& a, const IdealHNF& b) {
  const std::size_t m = static_cast<std::size_t>(K.degree());
  std::vector<std::vector<Int>> rows;
  rows.reserve(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) rows.push_back(K.mul(AlgebraicInt{a.basis[i]}, AlgebraicInt{b.basis[j]}).coords);
  IdealHNF r = make_ideal(hnf_mod(rows, a.norm * b.norm, m));
  if (r.norm != a.norm * b.norm) throw InvariantError("numfield", "ideal norm not multiplicative");
  return r;
}

IdealHNF ideal_pow(const NumberField& K, const IdealHNF& a, unsigned long e) {
  IdealHNF r = unit_ideal(K), b = a;
  bool first = true;
  while (e) {
    if (e & 1) {
      r = first ? b : ideal_mul(K, r, b);
      first = false;
    }
    e >>= 1;
    if (e) b = ideal_mul(K, b, b);
  }
  return r;
}

IdealHNF ideal_product(const NumberField& K, std::span<const std::pair<PrimeIdealData, unsigned long>> factors) {
  IdealHNF r = unit_ideal(K);
  Int expected = 1;
  for (const auto& [P, e] : factors) {
    if (e < 1) throw InputError("numfield", "ideal exponents must be >= 1");
    r = ideal_mul(K, r, ideal_pow(K, P.ideal, e));
    expected *= ipow(P.norm, e);
  }
  if (r.norm != expected) throw InvariantError("numfield", "ideal norm not multiplicative");
  return r;
}

IdealHNF ideal_add(const NumberField& K, const IdealHNF& a, const IdealHNF& b) {
  const std::size_t m = static_cast<std::size_t>(K.degree());
  Int D = gcd(a.norm, b.norm);
  if (D == 1) return unit_ideal(K);
  std::vector<std::vector<Int>> rows = a.basis;
  rows.insert(rows.end(), b.basis.begin(), b.basis.end());
  return make_ideal(hnf_mod(rows, D, m));
}

bool coprime(const NumberField& K, const IdealHNF& a, const IdealHNF& b) { return ideal_add(K, a, b).norm == 1; }

AlgebraicInt ideal_reduce(const IdealHNF& a, const AlgebraicInt& x) {
  AlgebraicInt r = x;
  const std::size_t m = a.basis.size();
  for (std::size_t k = 0; k < m; ++k) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), r.coords[k].get_mpz_t(), a.basis[k][k].get_mpz_t());
    if (q == 0) continue;
    for (std::size_t j = k; j < m; ++j) r.coords[j] -= q * a.basis[k][j];
  }
  return r;
}

bool ideal_contains(const IdealHNF& a, const AlgebraicInt& x) { return ideal_reduce(a, x).is_zero(); }

int valuation(const NumberField& K, const PrimeIdealData& P, const AlgebraicInt& x, int cap) {
  if (x.is_zero()) return kInfiniteValuation;
  IdealHNF power = P.ideal;
  for (int k = 1; k <= cap; ++k) {
    if (!ideal_contains(power, x)) return k - 1;
    power = ideal_mul(K, power, P.ideal);
  }
  return cap;
}

std::vector<PrimeIdealData> decompose_prime(const NumberField& K, const Int& p) {
  if (p < 2 || !mpz_fits_ulong_p(p.get_mpz_t()) || !is_prime(p.get_ui()))
    throw InputError("numfield", p.get_str() + " is not a prime");
  if (K.index() % p == 0)
    throw UnsupportedError("numfield", "unsupported prime " + p.get_str() + ": divides the index [O_K : Z[theta]]");
  const std::uint64_t pp = p.get_ui();
  GF Fp = GF::prime_field(pp);
  auto factors = gf_factor(Fp, reduce_mod_p(K.min_poly(), pp));
  {
    // Dedekind: p does not divide [O_K : Z[theta]] iff gcd(F, g, h) = 1 mod p.
    auto lift = [](const GFPoly& a) {
      ZPoly z;
      for (auto c : a) z.push_back(Int(static_cast<unsigned long>(c)));
      return z;
    };
    ZPoly g{1}, h{1};
    GFPoly gbar{1}, hbar{1};
    for (const auto& [q, e] : factors) {
      g = g * lift(q);
      gbar = gf_mul(Fp, gbar, q);
      for (int i = 1; i < e; ++i) {
        h = h * lift(q);
        hbar = gf_mul(Fp, hbar, q);
      }
    }
    ZPoly F = K.min_poly() - g * h;
    for (auto& c : F) c /= p;
    GFPoly t = gf_gcd(Fp, gf_gcd(Fp, reduce_mod_p(F, pp), gbar), hbar);
    if (gf_degree(t) > 0)
      throw UnsupportedError("numfield", "unsupported prime " + p.get_str() + ": divides the index [O_K : Z[theta]]");
  }
  std::vector<PrimeIdealData> out;
  int sum = 0;
  for (const auto& [h, e] : factors) {
    PrimeIdealData P;
    P.p = p;
    P.e = e;
    P.f = gf_degree(h);
    P.norm = ipow(p, static_cast<unsigned long>(P.f));
    P.residue_poly.assign(h.size(), Int(0));
    for (std::size_t i = 0; i < h.size(); ++i) P.residue_poly[i] = Int(static_cast<unsigned long>(h[i]));
    std::vector<Rat> hc(static_cast<std::size_t>(K.degree()), Rat(0));
    AlgebraicInt htheta = K.zero();
    for (std::size_t i = 0; i < h.size(); ++i)
      if (h[i] != 0) htheta += Int(static_cast<unsigned long>(h[i])) * K.theta_power(static_cast<int>(i));
    AlgebraicInt gens[2] = {K.from_int(p), htheta};
    P.ideal = ideal_from_generators(K, gens, p);
    if (P.ideal.norm != P.norm) throw InvariantError("numfield", "prime ideal norm mismatch");
    std::vector<AlgebraicInt> candidates = {htheta, htheta + K.from_int(p), K.from_int(p)};
    bool found = false;
    for (const auto& c : candidates) {
      AlgebraicInt g2[2] = {K.from_int(p), c};
      if (!(ideal_from_generators(K, g2, p) == P.ideal)) continue;
      if (valuation(K, P, c, 2) != 1) continue;
      P.pi = c;
      found = true;
      break;
    }
    if (!found) throw InvariantError("numfield", "no uniformizer among Kummer-Dedekind candidates");
    sum += P.e * P.f;
    out.push_back(std::move(P));
  }
  if (sum != K.degree()) throw InvariantError("numfield", "sum of e*f differs from the degree");
  std::stable_sort(out.begin(), out.end(), [](const PrimeIdealData& a, const PrimeIdealData& b) {
    if (a.f != b.f) return a.f < b.f;
    return std::lexicographical_compare(a.residue_poly.begin(), a.residue_poly.end(), b.residue_poly.begin(),
                                        b.residue_poly.end());
  });
  return out;
}

ResidueMap::ResidueMap(const NumberField& K, const PrimeIdealData& P)
    : K_(&K),
      F_(P.p.get_ui(),
         [&] {
           std::vector<std::uint64_t> h;
           for (const auto& c : P.residue_poly) h.push_back(c.get_ui());
           return h;
         }()),
      p_(P.p.get_ui()) {}

GF::Elem ResidueMap::operator()(const AlgebraicInt& x) const {
  std::vector<Rat> c = K_->to_power_coords(x);
  const Int P(static_cast<unsigned long>(p_));
  // t = class of theta: for f = 1 the root -h_0, otherwise the basis element t.
  GF::Elem t = F_.degree() == 1 ? F_.neg(F_.modulus()[0]) : static_cast<GF::Elem>(p_);
  GF::Elem acc = 0;
  for (std::size_t a = c.size(); a-- > 0;) {
    Int num = mod_floor(c[a].get_num(), P);
    Int den = mod_floor(c[a].get_den(), P);
    GF::Elem v = F_.mul(F_.from_int(num), F_.inv(F_.from_int(den)));
    acc = F_.add(F_.mul(acc, t), v);
  }
  return acc;
}

AlgebraicInt ResidueMap::lift(GF::Elem a) const {
  auto d = F_.digits(a);
  std::vector<Rat> c(static_cast<std::size_t>(K_->degree()), Rat(0));
  if (F_.degree() == 1) {
    c[0] = Rat(Int(static_cast<unsigned long>(d[0])));
    return K_->from_power_coords(c);
  }
  AlgebraicInt r = K_->zero();
  for (std::size_t l = 0; l < d.size(); ++l)
    if (d[l] != 0) r += Int(static_cast<unsigned long>(d[l])) * K_->theta_power(static_cast<int>(l));
  return r;
}

CrtContext::CrtContext(const NumberField& K, std::vector<IdealHNF> ideals) : K_(&K), ideals_(std::move(ideals)) {
  const std::size_t n = ideals_.size();
  const std::size_t m = static_cast<std::size_t>(K.degree());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!coprime(K, ideals_[i], ideals_[j])) throw InputError("numfield", "CRT moduli are not pairwise coprime");
  product_ = unit_ideal(K);
  for (const auto& I : ideals_) product_ = ideal_mul(K, product_, I);
  const AlgebraicInt one = K.one();
  for (std::size_t i = 0; i < n; ++i) {
    if (n == 1) {
      idem_.push_back(one);
      break;
    }
    IdealHNF J = unit_ideal(K);
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) J = ideal_mul(K, J, ideals_[j]);
    IntMatrix S = ideals_[i].basis;
    S.insert(S.end(), J.basis.begin(), J.basis.end());
    IntMatrix H, U;
    hnf_transform(S, m, H, U);
    for (std::size_t k = 0; k < m; ++k)
      for (std::size_t l = 0; l < m; ++l)
        if (H[k][l] != (k == l ? 1 : 0)) throw InvariantError("numfield", "sum of coprime ideals is not O_K");
    // 1 = sum_k one_k H_k = sum_l lambda_l S_l.
    std::vector<Int> lambda(2 * m, Int(0));
    for (std::size_t k = 0; k < m; ++k)
      for (std::size_t l = 0; l < 2 * m; ++l) lambda[l] += one.coords[k] * U[k][l];
    AlgebraicInt v = K.zero();
    for (std::size_t l = 0; l < m; ++l) v += lambda[m + l] * AlgebraicInt{J.basis[l]};
    AlgebraicInt u = one - v;
    if (!ideal_contains(ideals_[i], u) || !ideal_contains(J, v))
      throw InvariantError("numfield", "CRT idempotent check failed");
    idem_.push_back(ideal_reduce(product_, v));
  }
}

AlgebraicInt CrtContext::operator()(std::span<const AlgebraicInt> residues) const {
  if (residues.size() != ideals_.size()) throw InputError("numfield", "CRT residue count mismatch");
  AlgebraicInt x = K_->zero();
  for (std::size_t i = 0; i < residues.size(); ++i) x += K_->mul(residues[i], idem_[i]);
  x = ideal_reduce(product_, x);
  for (std::size_t i = 0; i < residues.size(); ++i)
    if (!ideal_contains(ideals_[i], x - residues[i])) throw InvariantError("numfield", "CRT result fails a congruence");
  return x;
}

AlgebraicInt crt_reduce(const NumberField& K, std::span<const std::pair<AlgebraicInt, IdealHNF>> residues) {
  std::vector<IdealHNF> ideals;
  std::vector<AlgebraicInt> values;
  for (const auto& [x, I] : residues) {
    ideals.push_back(I);
    values.push_back(x);
  }
  if (ideals.empty()) return K.zero();
  CrtContext ctx(K, std::move(ideals));
  return ctx(values);
}

SmallRepContext::SmallRepContext(const NumberField& K, const IdealHNF& a) : K_(&K), ideal_(a), scale_bits_(kScaleBits) {
  if (a.norm == 0) throw InputError("numfield", "small_rep modulo the zero ideal");
  long bits = bit_length(a.norm);
  for (const auto& row : a.basis)
    for (const auto& x : row) bits = std::max(bits, bit_length(x));
  table_ = K.embeddings(bits + scale_bits_ + 96);
  coords_ = a.basis;
  emb_.clear();
  for (const auto& row : coords_) emb_.push_back(embed_scaled(AlgebraicInt{row}));
  lll_reduce(emb_, &coords_);
  RatMatrix mu;
  gram_schmidt(emb_, gs_, mu, gs_norm_);
  log_bound_ = K.log_delta() + (bit_length(a.norm) > 0 ? std::log(a.norm.get_d()) : 0.0L) / K.degree();
  if (!std::isfinite(static_cast<double>(log_bound_))) {
    long e = 0;
    double d = mpz_get_d_2exp(&e, a.norm.get_mpz_t());
    log_bound_ = K.log_delta() + (std::log(static_cast<long double>(d)) + e * std::log(2.0L)) / K.degree();
  }
}

std::vector<Int> SmallRepContext::embed_scaled(const AlgebraicInt& x) const {
  std::vector<Complex> v;
  std::vector<Real> err;
  K_->embed(x, table_, v, err);
  std::vector<Int> out;
  const mpfr_prec_t wp = table_.precision;
  Real sqrt2 = sqrt(Real(2.0L, wp));
  auto to_int = [&](const Real& r) {
    Real s = mul_2si(r, scale_bits_);
    mpz_t z;
    mpz_init(z);
    mpfr_get_z(z, s.get(), MPFR_RNDN);
    Int res(z);
    mpz_clear(z);
    return res;
  };
  for (std::size_t pl = 0; pl < v.size(); ++pl) {
    if (table_.is_real[pl]) {
      out.push_back(to_int(v[pl].re));
    } else {
      out.push_back(to_int(v[pl].re * sqrt2));
      out.push_back(to_int(v[pl].im * sqrt2));
    }
  }
  return out;
}

void SmallRepContext::check_bound(const AlgebraicInt& r) const {
  std::vector<Complex> v;
  std::vector<Real> err;
  K_->embed(r, table_, v, err);
  const mpfr_prec_t wp = table_.precision;
  Real root(wp);
  Real n(ideal_.norm, wp);
  mpfr_rootn_ui(root.get(), n.get(), static_cast<unsigned long>(K_->degree()), MPFR_RNDN);
  Real bound = K_->delta(wp) * root;
  for (std::size_t pl = 0; pl < v.size(); ++pl)
    if (abs(v[pl]) + err[pl] > bound) throw InvariantError("numfield", "small_rep output exceeds delta_K N(a)^{1/m}");
}

AlgebraicInt SmallRepContext::reduce(const AlgebraicInt& x) const {
  AlgebraicInt x0 = ideal_reduce(ideal_, x);
  std::vector<Int> t = embed_scaled(x0);
  std::vector<Rat> target(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) target[i] = Rat(t[i]);
  std::vector<Int> c = babai_nearest_plane(emb_, gs_, gs_norm_, std::move(target));
  AlgebraicInt r = x0;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c[i] != 0) r -= c[i] * AlgebraicInt{coords_[i]};
  check_bound(r);
  return r;
}

AlgebraicInt small_rep(const NumberField& K, const AlgebraicInt& x, const IdealHNF& a) {
  return SmallRepContext(K, a).reduce(x);
}

}  // namespace tpadic
