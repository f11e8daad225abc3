#include "tpadic/localfield.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tpadic/error.hpp"

namespace tpadic {

namespace {

GF make_residue_field(const Int& p, const ZPoly& U) {
  if (p < 2 || !mpz_fits_ulong_p(p.get_mpz_t()) || !is_prime(p.get_ui()))
    throw InputError("localfield", p.get_str() + " is not a prime");
  const std::uint64_t pp = p.get_ui();
  if (degree(U) <= 1) return GF::prime_field(pp);
  GFPoly h = reduce_mod_p(U, pp);
  if (gf_degree(h) != degree(U)) throw InputError("localfield", "unramified polynomial must be monic");
  GF Fp = GF::prime_field(pp);
  if (!gf_is_irreducible(Fp, h)) throw InputError("localfield", "unramified polynomial is reducible over the residue field");
  return GF(pp, h);
}

ZPoly normalize_unramified(const ZPoly& U) {
  if (degree(U) <= 1) return ZPoly{Int(0), Int(1)};
  if (!is_monic(U)) throw InputError("localfield", "unramified polynomial must be monic");
  return U;
}

ZPoly normalize_eisenstein(const Int& p, const ZPoly& E) {
  if (degree(E) <= 1) return ZPoly{Int(-p), Int(1)};
  if (!is_monic(E)) throw InputError("localfield", "Eisenstein polynomial must be monic");
  for (int i = 0; i < degree(E); ++i)
    if (E[static_cast<std::size_t>(i)] % p != 0) throw InputError("localfield", "polynomial is not Eisenstein: coefficient of X^" + std::to_string(i) + " is not divisible by p");
  if (vp(E[0], p) != 1) throw InputError("localfield", "polynomial is not Eisenstein: constant term has valuation != 1");
  return E;
}

}  // namespace

LocalField::LocalField(const Int& p, ZPoly unramified, ZPoly eisenstein, int N)
    : p_(p),
      p2_(p == 2),
      U_(normalize_unramified(unramified)),
      eis_(normalize_eisenstein(p, eisenstein)),
      F_(make_residue_field(p, U_)) {
  if (N < 1) throw InputError("localfield", "precision N must be >= 1");
  f_ = tpadic::degree(U_);
  e_ = tpadic::degree(eis_);
  N_ = N;
  // Guard digits absorb the loss of v(disc) when lifting conjugates of pi.
  int guard = 2;
  if (e_ > 1) guard += vp(tpadic::discriminant(eis_), p_);
  M_ = (N + e_ - 1) / e_ + guard;
  cap_ = e_ * M_;
  ppow_.resize(static_cast<std::size_t>(M_) + 2);
  ppow_[0] = 1;
  for (std::size_t i = 1; i < ppow_.size(); ++i) ppow_[i] = ppow_[i - 1] * p_;

  const std::size_t n = static_cast<std::size_t>(e_ * f_);
  uinv_.assign(n, Int(0));
  piu_.assign(n, Int(0));
  uinv_[0] = 1;
  if (e_ > 1) {
    // u = -sum (a_i / p) pi^i; Newton for its inverse modulo p^{M+1}.
    std::vector<Int> u(n, Int(0));
    for (int i = 0; i < e_; ++i) u[static_cast<std::size_t>(i * f_)] = -(eis_[static_cast<std::size_t>(i)] / p_);
    Int a0inv = inv_mod(u[0], p_);
    std::vector<Int> y(n, Int(0));
    y[0] = a0inv;
    std::vector<Int> t(n), s(n);
    for (int prec = 1; prec < 2 * (M_ + 1) * e_; prec *= 2) {
      mul_raw(u, y, t, M_ + 1);
      for (auto& x : t) x = -x;
      t[0] += 2;
      mul_raw(y, t, s, M_ + 1);
      y = s;
    }
    uinv_ = y;
    std::vector<Int> pi_e1(n, Int(0));
    pi_e1[static_cast<std::size_t>((e_ - 1) * f_)] = 1;
    mul_raw(pi_e1, uinv_, piu_, M_ + 1);
  }
}

void LocalField::reduce(Int& x, int k) const {
  if (p2_)
    mpz_fdiv_r_2exp(x.get_mpz_t(), x.get_mpz_t(), static_cast<mp_bitcnt_t>(k));
  else
    mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), ppow_[static_cast<std::size_t>(k)].get_mpz_t());
}

void LocalField::mul_raw(const std::vector<Int>& a, const std::vector<Int>& b, std::vector<Int>& out,
                         int mod_exp) const {
  const std::size_t e = static_cast<std::size_t>(e_), f = static_cast<std::size_t>(f_);
  if (e == 1 && f == 1) {
    out.resize(1);
    mpz_mul(out[0].get_mpz_t(), a[0].get_mpz_t(), b[0].get_mpz_t());
    reduce(out[0], mod_exp);
    return;
  }
  const std::size_t wf = 2 * f - 1;
  std::vector<Int> acc((2 * e - 1) * wf, Int(0));
  for (std::size_t j1 = 0; j1 < e; ++j1)
    for (std::size_t i1 = 0; i1 < f; ++i1) {
      const Int& x = a[j1 * f + i1];
      if (sgn(x) == 0) continue;
      for (std::size_t j2 = 0; j2 < e; ++j2)
        for (std::size_t i2 = 0; i2 < f; ++i2) {
          const Int& y = b[j2 * f + i2];
          if (sgn(y) == 0) continue;
          Int& z = acc[(j1 + j2) * wf + i1 + i2];
          mpz_addmul(z.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
        }
    }
  // t-degree reduction by the monic U.
  for (std::size_t s = 0; s < 2 * e - 1; ++s)
    for (std::size_t d = wf; d-- > f;) {
      Int c = acc[s * wf + d];
      if (sgn(c) == 0) continue;
      for (std::size_t i = 0; i < f; ++i)
        mpz_submul(acc[s * wf + d - f + i].get_mpz_t(), c.get_mpz_t(), U_[i].get_mpz_t());
      acc[s * wf + d] = 0;
    }
  // pi^e = -sum a_i pi^i.
  for (std::size_t s = 2 * e - 1; s-- > e;) {
    for (std::size_t i = 0; i < f; ++i) {
      Int c = acc[s * wf + i];
      if (sgn(c) == 0) continue;
      for (std::size_t l = 0; l < e; ++l)
        mpz_submul(acc[(s - e + l) * wf + i].get_mpz_t(), c.get_mpz_t(), eis_[l].get_mpz_t());
    }
  }
  out.resize(e * f);
  for (std::size_t j = 0; j < e; ++j)
    for (std::size_t i = 0; i < f; ++i) {
      out[j * f + i] = acc[j * wf + i];
      reduce(out[j * f + i], mod_exp);
    }
}

void LocalField::normalize(LocalElem& x) const {
  const int k = x.prec / e_, s = x.prec % e_;
  for (int j = 0; j < e_; ++j) {
    const int kj = k + (j < s ? 1 : 0);
    for (int i = 0; i < f_; ++i) reduce(x.c[static_cast<std::size_t>(j * f_ + i)], kj);
  }
}

int LocalField::coord_valuation(const Int& c, std::size_t idx) const {
  if (sgn(c) == 0) return kInfiniteValuation;
  return e_ * vp(c, p_) + static_cast<int>(idx) / f_;
}

LocalElem LocalField::zero() const { return LocalElem{std::vector<Int>(static_cast<std::size_t>(e_ * f_), Int(0)), cap_}; }

LocalElem LocalField::one() const { return from_int(1); }

LocalElem LocalField::from_int(const Int& x) const {
  LocalElem r = zero();
  r.c[0] = x;
  normalize(r);
  return r;
}

LocalElem LocalField::from_coords(std::vector<Int> c, int prec) const {
  if (c.size() != static_cast<std::size_t>(e_ * f_)) throw InputError("localfield", "coordinate vector has wrong length");
  LocalElem r{std::move(c), std::clamp(prec, 0, cap_)};
  normalize(r);
  return r;
}

LocalElem LocalField::uniformizer() const {
  if (e_ == 1) return from_int(p_);
  LocalElem r = zero();
  r.c[static_cast<std::size_t>(f_)] = 1;
  return r;
}

LocalElem LocalField::unramified_generator() const {
  LocalElem r = zero();
  if (f_ > 1) r.c[1] = 1;
  return r;
}

LocalElem LocalField::add(const LocalElem& x, const LocalElem& y) const {
  LocalElem r{std::vector<Int>(x.c.size()), std::min(x.prec, y.prec)};
  for (std::size_t i = 0; i < r.c.size(); ++i) mpz_add(r.c[i].get_mpz_t(), x.c[i].get_mpz_t(), y.c[i].get_mpz_t());
  normalize(r);
  return r;
}

LocalElem LocalField::sub(const LocalElem& x, const LocalElem& y) const {
  LocalElem r{std::vector<Int>(x.c.size()), std::min(x.prec, y.prec)};
  for (std::size_t i = 0; i < r.c.size(); ++i) mpz_sub(r.c[i].get_mpz_t(), x.c[i].get_mpz_t(), y.c[i].get_mpz_t());
  normalize(r);
  return r;
}

LocalElem LocalField::neg(const LocalElem& x) const {
  LocalElem r = x;
  for (auto& c : r.c) c = -c;
  normalize(r);
  return r;
}

LocalElem LocalField::mul(const LocalElem& x, const LocalElem& y) const {
  const int vx = valuation(x), vy = valuation(y);
  LocalElem r;
  r.prec = std::min({cap_, x.prec + vy, y.prec + vx});
  mul_raw(x.c, y.c, r.c, M_);
  normalize(r);
  return r;
}

LocalElem LocalField::mul_int(const Int& s, const LocalElem& x) const {
  if (sgn(s) == 0) return zero();
  LocalElem r = x;
  const long v = static_cast<long>(e_) * vp(s, p_);
  r.prec = static_cast<int>(std::min<long>(cap_, x.prec + v));
  for (auto& c : r.c) c *= s;
  normalize(r);
  return r;
}

LocalElem LocalField::pow(const LocalElem& x, const Int& n) const {
  if (sgn(n) < 0) throw InputError("localfield", "negative exponent");
  LocalElem r = one(), b = x;
  const long bits = bit_length(n);
  for (long i = 0; i < bits; ++i) {
    if (mpz_tstbit(n.get_mpz_t(), static_cast<mp_bitcnt_t>(i))) r = mul(r, b);
    if (i + 1 < bits) b = mul(b, b);
  }
  return r;
}

LocalElem LocalField::pi_power(int w) const {
  if (w < 0) throw InputError("localfield", "negative power of the uniformizer");
  if (w >= cap_) {
    LocalElem z = zero();
    return z;  // exact zero modulo P^cap
  }
  if (e_ == 1) return from_int(ppow_[static_cast<std::size_t>(w)]);
  LocalElem r = zero();
  const int k = w / e_, s = w % e_;
  // pi^w = p^k u^k pi^s.
  std::vector<Int> uk(static_cast<std::size_t>(e_ * f_), Int(0));
  uk[0] = 1;
  if (k > 0) {
    std::vector<Int> u(uk.size(), Int(0));
    for (int i = 0; i < e_; ++i) u[static_cast<std::size_t>(i * f_)] = -(eis_[static_cast<std::size_t>(i)] / p_);
    std::vector<Int> base = u, tmp;
    int n = k;
    while (n) {
      if (n & 1) {
        mul_raw(uk, base, tmp, M_);
        uk = tmp;
      }
      n >>= 1;
      if (n) {
        mul_raw(base, base, tmp, M_);
        base = tmp;
      }
    }
  }
  std::vector<Int> ps(uk.size(), Int(0));
  ps[static_cast<std::size_t>(s * f_)] = ppow_[static_cast<std::size_t>(k)];
  mul_raw(uk, ps, r.c, M_);
  normalize(r);
  return r;
}

int LocalField::valuation(const LocalElem& x) const {
  int v = x.prec;
  for (std::size_t i = 0; i < x.c.size(); ++i) {
    if (sgn(x.c[i]) == 0) continue;
    v = std::min(v, coord_valuation(x.c[i], i));
  }
  return v;
}

bool LocalField::congruent(const LocalElem& x, const LocalElem& y, int at_least) const {
  if (std::min(x.prec, y.prec) < at_least)
    throw PrecisionError("localfield", "congruence mod P^" + std::to_string(at_least) + " undecidable at precision " +
                                           std::to_string(std::min(x.prec, y.prec)));
  return valuation(sub(truncate(x, at_least), truncate(y, at_least))) >= at_least;
}

LocalElem LocalField::truncate(const LocalElem& x, int prec) const {
  if (prec >= x.prec) return x;
  LocalElem r = x;
  r.prec = std::max(prec, 0);
  normalize(r);
  return r;
}

std::vector<Int> LocalField::uinv_power(int k) const {
  std::vector<Int> r(static_cast<std::size_t>(e_ * f_), Int(0)), base = uinv_, tmp;
  r[0] = 1;
  while (k) {
    if (k & 1) {
      mul_raw(r, base, tmp, M_);
      r = tmp;
    }
    k >>= 1;
    if (k) {
      mul_raw(base, base, tmp, M_);
      base = tmp;
    }
  }
  return r;
}

LocalElem LocalField::shift_down(const LocalElem& x, int w) const {
  if (w == 0) return x;
  if (w < 0) return shift_up(x, -w);
  const int v = valuation(x);
  if (v < w) {
    if (v >= x.prec)
      throw PrecisionError("localfield", "division by pi^" + std::to_string(w) + " undecidable at precision " + std::to_string(x.prec));
    throw InvariantError("localfield", "element of valuation " + std::to_string(v) + " is not divisible by pi^" + std::to_string(w));
  }
  LocalElem y = x;
  y.prec = x.prec - w;
  const int k = w / e_, s = w % e_;
  if (k > 0) {
    for (auto& c : y.c) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), ppow_[static_cast<std::size_t>(k)].get_mpz_t());
    if (e_ > 1) {
      std::vector<Int> t;
      mul_raw(y.c, uinv_power(k), t, M_);
      y.c = std::move(t);
    }
  }
  for (int step = 0; step < s; ++step) {
    std::vector<Int> z;
    mul_raw(y.c, piu_, z, M_ + 1);
    for (auto& c : z) {
      if (!mpz_divisible_p(c.get_mpz_t(), p_.get_mpz_t())) throw InvariantError("localfield", "renormalization lost integrality");
      mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), p_.get_mpz_t());
    }
    y.c = std::move(z);
  }
  normalize(y);
  return y;
}

LocalElem LocalField::inverse_unit(const LocalElem& x) const {
  if (x.prec < 1) throw PrecisionError("localfield", "inverse of an element known to precision 0");
  if (valuation(x) != 0) throw InvariantError("localfield", "inverse of a non-unit");
  LocalElem y = lift_residue(F_.inv(residue(x)));
  std::vector<Int> t, s;
  for (int known = 1; known < cap_; known *= 2) {
    mul_raw(x.c, y.c, t, M_);
    for (auto& c : t) c = -c;
    t[0] += 2;
    mul_raw(y.c, t, s, M_);
    y.c = s;
  }
  y.prec = x.prec;
  normalize(y);
  return y;
}

LocalElem LocalField::divide(const LocalElem& x, const LocalElem& y) const {
  const int vy = valuation(y);
  if (vy >= y.prec) throw PrecisionError("localfield", "division by a precision-zero element");
  LocalElem u = shift_down(y, vy);
  return mul(shift_down(x, vy), inverse_unit(u));
}

GF::Elem LocalField::residue(const LocalElem& x) const {
  if (x.prec < 1) throw PrecisionError("localfield", "residue of an element known to precision 0");
  const std::uint64_t p = p_.get_ui();
  GF::Elem r = 0, w = 1;
  for (int i = 0; i < f_; ++i) {
    r += mpz_fdiv_ui(x.c[static_cast<std::size_t>(i)].get_mpz_t(), p) * w;
    w *= p;
  }
  return r;
}

LocalElem LocalField::lift_residue(GF::Elem a) const {
  LocalElem r = zero();
  const std::uint64_t p = p_.get_ui();
  for (int i = 0; i < f_; ++i) {
    r.c[static_cast<std::size_t>(i)] = Int(static_cast<unsigned long>(a % p));
    a /= p;
  }
  return r;
}

LocalElem LocalField::teichmuller(GF::Elem a) const {
  LocalElem x = lift_residue(a);
  if (a == 0) return x;
  const Int q(static_cast<unsigned long>(F_.size()));
  for (int i = 0; i <= M_; ++i) {
    LocalElem y = pow(x, q);
    if (y.c == x.c) break;
    x = std::move(y);
  }
  return x;
}

std::vector<GF::Elem> LocalField::digits(const LocalElem& x, int L) const {
  if (L > x.prec) throw PrecisionError("localfield", std::to_string(L) + " digits requested at precision " + std::to_string(x.prec));
  std::vector<GF::Elem> out(static_cast<std::size_t>(L), 0);
  const std::uint64_t p = p_.get_ui();
  if (e_ == 1) {
    GF::Elem w = 1;
    for (int i = 0; i < f_; ++i) {
      const Int& c = x.c[static_cast<std::size_t>(i)];
      if (p2_) {
        for (int t = 0; t < L; ++t)
          if (mpz_tstbit(c.get_mpz_t(), static_cast<mp_bitcnt_t>(t))) out[static_cast<std::size_t>(t)] += w;
      } else {
        Int r = c;
        for (int t = 0; t < L && sgn(r) != 0; ++t)
          out[static_cast<std::size_t>(t)] += mpz_fdiv_q_ui(r.get_mpz_t(), r.get_mpz_t(), p) * w;
      }
      w *= p;
    }
    return out;
  }
  LocalElem y = x;
  for (int t = 0; t < L; ++t) {
    const GF::Elem d = residue(y);
    out[static_cast<std::size_t>(t)] = d;
    if (t + 1 < L) y = shift_down(sub(y, lift_residue(d)), 1);
  }
  return out;
}

std::uint64_t LocalField::enum_index(const LocalElem& x, int k) const {
  const auto d = digits(x, k);
  std::uint64_t n = 0;
  for (int t = k; t-- > 0;) n = n * F_.size() + d[static_cast<std::size_t>(t)];
  return n;
}

LocalElem LocalField::from_enum_index(std::uint64_t n, int k) const {
  std::vector<GF::Elem> d(static_cast<std::size_t>(k));
  for (int t = 0; t < k; ++t) {
    d[static_cast<std::size_t>(t)] = n % F_.size();
    n /= F_.size();
  }
  if (e_ == 1) {
    LocalElem r = zero();
    const std::uint64_t p = p_.get_ui();
    for (int t = k; t-- > 0;) {
      GF::Elem a = d[static_cast<std::size_t>(t)];
      for (int i = 0; i < f_; ++i) {
        r.c[static_cast<std::size_t>(i)] = r.c[static_cast<std::size_t>(i)] * p_ + Int(static_cast<unsigned long>(a % p));
        a /= p;
      }
    }
    normalize(r);
    return r;
  }
  LocalElem r = zero();
  const LocalElem pi = uniformizer();
  for (int t = k; t-- > 0;) r = add(mul(r, pi), lift_residue(d[static_cast<std::size_t>(t)]));
  return r;
}

std::vector<LocalElem> LocalField::residue_enum(int k) const {
  if (k < 0 || k > N_) throw InputError("localfield", "residue_enum level must lie in [0, N]");
  const long double bits = k * std::log2(static_cast<long double>(F_.size()));
  if (bits > 26) throw ResourceError("localfield", "residue_enum of size q^" + std::to_string(k) + " exceeds 2^26");
  std::uint64_t count = 1;
  for (int t = 0; t < k; ++t) count *= F_.size();
  std::vector<LocalElem> out;
  out.reserve(count);
  for (std::uint64_t n = 0; n < count; ++n) out.push_back(from_enum_index(n, k));
  return out;
}

LocalPoly to_local_poly(const LocalField& E, const ZPoly& f) {
  LocalPoly r;
  r.reserve(f.size());
  for (const auto& c : f) r.push_back(E.from_int(c));
  return r;
}

LocalElem poly_eval(const LocalField& E, const LocalPoly& f, const LocalElem& x) {
  if (f.empty()) return E.zero();
  LocalElem acc = f.back();
  for (std::size_t i = f.size() - 1; i-- > 0;) acc = E.add(E.mul(acc, x), f[i]);
  return acc;
}

LocalPoly taylor_coefficients(const LocalField& E, const LocalPoly& f, const LocalElem& x) {
  LocalPoly t = f;
  const std::size_t n = t.size();
  for (std::size_t k = 0; k + 1 < n; ++k)
    for (std::size_t i = n - 1; i-- > k;) t[i] = E.add(t[i], E.mul(x, t[i + 1]));
  return t;
}

namespace {

std::vector<LocalElem> roots_rec(const LocalField& E, LocalPoly f, int depth) {
  if (depth > 4 * E.capacity()) throw PrecisionError("localfield", "root recursion exhausted precision");
  while (!f.empty() && E.is_precision_zero(f.back()) && f.back().prec >= E.capacity()) f.pop_back();
  if (f.size() <= 1) {
    if (f.empty()) throw PrecisionError("localfield", "polynomial vanished at working precision");
    return {};
  }
  int w = kInfiniteValuation;
  for (const auto& c : f)
    if (!E.is_precision_zero(c)) w = std::min(w, E.valuation(c));
  if (w == kInfiniteValuation) throw PrecisionError("localfield", "polynomial is precision-zero");
  for (auto& c : f) {
    if (E.valuation(c) < w) throw InvariantError("localfield", "renormalization lost integrality");
    c = E.shift_down(c, w);
  }
  const GF& F = E.residue_field();
  std::vector<LocalElem> out;
  for (GF::Elem r = 0; r < F.size(); ++r) {
    GF::Elem acc = 0;
    bool known = true;
    for (std::size_t i = f.size(); i-- > 0;) {
      if (f[i].prec < 1) {
        known = false;
        break;
      }
      acc = F.add(F.mul(acc, r), E.residue(f[i]));
    }
    if (!known) throw PrecisionError("localfield", "residue polynomial undecidable");
    if (acc != 0) continue;
    const LocalElem R = E.lift_residue(r);
    LocalPoly T = taylor_coefficients(E, f, R);
    if (E.valuation(T[1]) == 0) {
      out.push_back(hensel_root(E, f, R, 0, 0).root);
      continue;
    }
    const LocalElem pi = E.uniformizer();
    LocalElem pk = E.one();
    for (auto& c : T) {
      c = E.mul(c, pk);
      pk = E.mul(pk, pi);
    }
    for (auto& y : roots_rec(E, T, depth + 1)) out.push_back(E.add(R, E.mul(pi, y)));
  }
  return out;
}

}  // namespace

std::vector<LocalElem> local_roots(const LocalField& E, const LocalPoly& f) { return roots_rec(E, f, 0); }

HenselResult hensel_root(const LocalField& E, const LocalPoly& f, const LocalElem& x0, int a, int b) {
  if (f.size() < 2) throw InputError("localfield", "hensel_root needs a polynomial of degree >= 1");
  return hensel_root(E, f, taylor_coefficients(E, f, x0), x0, a, b);
}

HenselResult hensel_root(const LocalField& E, const LocalPoly& f, const LocalPoly& T, const LocalElem& x0, int a, int b) {
  if (a < 0 || b < 0) throw InputError("localfield", "hensel_root needs a, b >= 0");
  if (f.size() < 2 || T.size() != f.size()) throw InputError("localfield", "hensel_root needs a polynomial of degree >= 1");
  const int v0 = E.valuation(T[0]);
  if (v0 <= a + b) {
    if (v0 >= T[0].prec) throw PrecisionError("localfield", "condition (1) undecidable");
    throw PreconditionError("localfield", 1, "v(f(x0)) = " + std::to_string(v0) + " <= a + b = " + std::to_string(a + b));
  }
  const int v1 = E.valuation(T[1]);
  if (v1 >= T[1].prec) throw PrecisionError("localfield", "condition (2) undecidable");
  if (v1 > a) throw PreconditionError("localfield", 2, "v(f'(x0)) = " + std::to_string(v1) + " > a = " + std::to_string(a));
  for (std::size_t nu = 2; nu < T.size(); ++nu) {
    const long bound = static_cast<long>(a) - static_cast<long>(nu - 1) * b;
    if (bound <= 0) break;
    const int v = E.valuation(T[nu]);
    if (v >= bound) continue;
    if (v >= T[nu].prec) throw PrecisionError("localfield", "condition (3) undecidable");
    throw PreconditionError("localfield", 3,
                            "v(f^(" + std::to_string(nu) + ")(x0)/" + std::to_string(nu) + "!) = " + std::to_string(v) +
                                " < " + std::to_string(bound));
  }
  // g(X) = (pi^b f'(x0))^{-1} f(pi^b X + x0) has g(0) = 0 mod P and g'(0) = 1.
  const LocalElem u1 = E.inverse_unit(E.shift_down(T[1], v1));
  LocalPoly g(T.size());
  for (std::size_t nu = 0; nu < T.size(); ++nu) {
    LocalElem c = T[nu];
    if (nu == 0) {
      c = E.shift_down(c, b + v1);
    } else {
      const long up = static_cast<long>(b) * static_cast<long>(nu - 1);
      if (up >= E.capacity()) {
        c = E.zero();
        c.prec = E.capacity();
      } else {
        c = E.shift_down(E.shift_up(c, static_cast<int>(up)), v1);
      }
    }
    g[nu] = E.mul(c, u1);
  }
  LocalPoly dg(g.size() - 1);
  for (std::size_t i = 1; i < g.size(); ++i) dg[i - 1] = E.mul_int(Int(static_cast<unsigned long>(i)), g[i]);
  const int max_iter = static_cast<int>(std::ceil(std::log2(static_cast<double>(std::max(E.precision(), 2))))) + 4;
  LocalElem X = E.zero();
  HenselResult res;
  bool done = false;
  for (int it = 0; it <= max_iter; ++it) {
    const LocalElem gx = poly_eval(E, g, X);
    if (E.is_precision_zero(gx)) {
      done = true;
      break;
    }
    if (it == max_iter) break;
    const LocalElem dx = poly_eval(E, dg, X);
    X = E.sub(X, E.mul(gx, E.inverse_unit(dx)));
    res.iterations = it + 1;
  }
  if (!done) throw InvariantError("localfield", "Newton iteration did not converge");
  res.root = E.add(x0, E.shift_up(X, b));
  if (!E.is_precision_zero(poly_eval(E, f, res.root))) throw InvariantError("localfield", "lifted root does not annihilate f");
  if (E.valuation(E.sub(res.root, x0)) <= b) throw InvariantError("localfield", "lifted root left the disc v(x - x0) > b");
  return res;
}

GaloisAction galois_group(const LocalField& E, SubField F) {
  GaloisAction G;
  G.base = F;
  G.e_rel = E.e() / E.sub_e(F);
  G.f_rel = E.f() / E.sub_f(F);
  const int target = G.e_rel * G.f_rel;
  const int e = E.e(), f = E.f();
  const GF& RF = E.residue_field();

  std::vector<LocalElem> taus, rhos;
  if (f == 1)
    taus.push_back(E.zero());
  else
    taus = local_roots(E, to_local_poly(E, E.unramified_poly()));
  if (e == 1)
    rhos.push_back(E.uniformizer());
  else
    rhos = local_roots(E, to_local_poly(E, E.eisenstein_poly()));

  const LocalElem t = E.unramified_generator(), pi = E.uniformizer();
  const GF::Elem tbar = f == 1 ? 0 : RF.p();
  auto frob_of = [&](const LocalElem& tau) {
    if (f == 1) return 0;
    GF::Elem r = tbar;
    const GF::Elem target_res = E.residue(tau);
    for (int j = 0; j < f; ++j) {
      if (r == target_res) return j;
      r = RF.pow(r, Int(static_cast<unsigned long>(RF.p())));
    }
    throw InvariantError("localfield", "root of the unramified polynomial is not a Frobenius conjugate");
  };

  struct Cand {
    int frob;
    std::uint64_t key;
    LocalElem tau, rho;
  };
  std::vector<Cand> cands;
  const int keylen = std::min(E.precision(), 8);
  for (const auto& tau : taus) {
    const int j = frob_of(tau);
    if (F == SubField::Unramified && j != 0) continue;
    if (F == SubField::Whole && j != 0) continue;
    for (const auto& rho : rhos) {
      if (F == SubField::Whole && !E.congruent(rho, pi, std::min(rho.prec, E.precision()))) continue;
      std::uint64_t key = 0;
      const auto d = E.digits(rho, std::min(keylen, rho.prec));
      for (std::size_t i = d.size(); i-- > 0;) key = key * RF.size() + d[i];
      cands.push_back({j, key, tau, rho});
    }
  }
  if (static_cast<int>(cands.size()) != target)
    throw InputError("localfield", "not Galois or precision insufficient: found " + std::to_string(cands.size()) +
                                       " automorphisms over the base, expected " + std::to_string(target));
  std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
    return a.frob != b.frob ? a.frob < b.frob : a.key < b.key;
  });
  // Identity first.
  auto is_identity = [&](const Cand& c) {
    return c.frob == 0 && E.congruent(c.rho, pi, std::min(c.rho.prec, E.precision())) &&
           (f == 1 || E.congruent(c.tau, t, std::min(c.tau.prec, E.precision())));
  };
  auto id = std::find_if(cands.begin(), cands.end(), is_identity);
  if (id == cands.end()) throw InvariantError("localfield", "identity missing from the automorphism list");
  std::rotate(cands.begin(), id, id + 1);

  for (const auto& c : cands) {
    if (c.tau.prec < E.precision() || c.rho.prec < E.precision())
      throw PrecisionError("localfield", "not Galois or precision insufficient: conjugates lifted to precision " +
                                             std::to_string(std::min(c.tau.prec, c.rho.prec)));
    Automorphism a;
    a.t_image = c.tau;
    a.pi_image = c.rho;
    a.frobenius = c.frob;
    a.basis.resize(static_cast<std::size_t>(e * f));
    LocalElem pj = E.one();
    for (int j = 0; j < e; ++j) {
      LocalElem ti = pj;
      for (int i = 0; i < f; ++i) {
        a.basis[static_cast<std::size_t>(j * f + i)] = ti;
        ti = E.mul(ti, c.tau);
      }
      pj = E.mul(pj, c.rho);
    }
    G.auts.push_back(std::move(a));
  }
  const int n = G.size();
  G.table.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), -1));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const LocalElem tt = apply_aut(E, G, a, G.auts[static_cast<std::size_t>(b)].t_image);
      const LocalElem pp = apply_aut(E, G, a, G.auts[static_cast<std::size_t>(b)].pi_image);
      const int cmp = std::min({tt.prec, pp.prec, E.precision()});
      for (int c = 0; c < n; ++c) {
        const auto& ac = G.auts[static_cast<std::size_t>(c)];
        if (E.congruent(tt, ac.t_image, cmp) && E.congruent(pp, ac.pi_image, cmp)) {
          G.table[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = c;
          break;
        }
      }
      if (G.table[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] < 0)
        throw InvariantError("localfield", "automorphisms not closed under composition");
    }
  return G;
}

LocalElem apply_aut(const LocalField& E, const GaloisAction& G, int sigma, const LocalElem& x) {
  if (sigma < 0 || sigma >= G.size()) throw InputError("localfield", "automorphism index out of range");
  if (x.c.size() != static_cast<std::size_t>(E.degree())) throw InputError("localfield", "element of a different field");
  if (sigma == 0) return x;
  const auto& basis = G.auts[static_cast<std::size_t>(sigma)].basis;
  LocalElem r = E.zero();
  int prec = x.prec;
  for (std::size_t k = 0; k < x.c.size(); ++k) {
    prec = std::min(prec, basis[k].prec);
    if (sgn(x.c[k]) == 0) continue;
    r = E.add(r, E.mul_int(x.c[k], basis[k]));
  }
  return E.truncate(r, prec);
}

std::vector<int> stabilizer(const LocalField& E, const GaloisAction& G, const LocalElem& x, int k) {
  std::vector<int> out;
  for (int s = 0; s < G.size(); ++s)
    if (E.congruent(apply_aut(E, G, s, x), x, k)) out.push_back(s);
  return out;
}

LocalElem f_part(const LocalField& E, SubField F, const LocalElem& x) {
  if (F == SubField::Whole) return x;
  LocalElem r = x;
  const int f = E.f();
  for (std::size_t k = 0; k < x.c.size(); ++k) {
    const int j = static_cast<int>(k) / f, i = static_cast<int>(k) % f;
    const bool in_f = j == 0 && (F == SubField::Unramified || i == 0);
    if (in_f || sgn(x.c[k]) == 0) continue;
    const int v = E.e() * vp(x.c[k], E.p()) + j;
    if (v < x.prec)
      throw InvariantError("localfield", "not an F-element at current precision: coordinate " + std::to_string(k) +
                                             " has valuation " + std::to_string(v) + " < " + std::to_string(x.prec));
    r.c[k] = 0;
  }
  return r;
}

}  // namespace tpadic
