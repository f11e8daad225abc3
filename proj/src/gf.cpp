#include "tpadic/gf.hpp"

#include <algorithm>
#include <random>

#include "tpadic/error.hpp"

namespace tpadic {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }

std::vector<u64> prime_factors(u64 n) {
  std::vector<u64> out;
  for (u64 d = 2; d * d <= n && d < (1ULL << 22); ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

GF::GF(std::uint64_t p, std::vector<std::uint64_t> modulus) : p_(p), h_(std::move(modulus)) {
  if (!is_prime(p)) throw InputError("gf", "characteristic " + std::to_string(p) + " is not prime");
  if (h_.size() < 2 || h_.back() != 1) throw InputError("gf", "field modulus must be monic of degree >= 1");
  f_ = static_cast<int>(h_.size()) - 1;
  Int q = ipow(Int(static_cast<unsigned long>(p)), static_cast<unsigned long>(f_));
  if (q > Int("4611686018427387904")) throw UnsupportedError("gf", "residue field too large");
  q_ = q.get_ui();
  for (auto c : h_)
    if (c >= p_) throw InputError("gf", "modulus coefficient out of range");

  // Multiplicative generator: the first element whose order is q - 1.
  const auto ell = prime_factors(q_ - 1);
  for (Elem g = 1; g < q_; ++g) {
    bool ok = true;
    for (u64 l : ell) {
      Elem t = 1, b = g;
      u64 e = (q_ - 1) / l;
      while (e) {
        if (e & 1) t = mul_slow(t, b);
        b = mul_slow(b, b);
        e >>= 1;
      }
      if (t == 1) {
        ok = false;
        break;
      }
    }
    if (ok) {
      gen_ = g;
      break;
    }
    if (g > 100000) break;
  }
  if (q_ == 2) gen_ = 1;
  if (gen_ == 0) throw InputError("gf", "modulus is not irreducible (no generator found)");

  if (f_ > 1 && q_ <= (1u << 20)) {
    exp_.assign(q_ - 1, 0);
    log_.assign(q_, 0);
    Elem x = 1;
    for (u64 i = 0; i + 1 < q_; ++i) {
      exp_[i] = static_cast<std::uint32_t>(x);
      if (log_[x] != 0 || (i > 0 && x == 1)) throw InputError("gf", "modulus is not irreducible");
      log_[x] = static_cast<std::uint32_t>(i);
      x = mul_slow(x, gen_);
    }
  }
}

GF GF::prime_field(std::uint64_t p) { return GF(p, {0, 1}); }

GF::Elem GF::add(Elem a, Elem b) const {
  if (f_ == 1) {
    u64 s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Elem r = 0, w = 1;
  for (int i = 0; i < f_; ++i) {
    u64 s = a % p_ + b % p_;
    if (s >= p_) s -= p_;
    r += s * w;
    w *= p_;
    a /= p_;
    b /= p_;
  }
  return r;
}

GF::Elem GF::neg(Elem a) const {
  if (f_ == 1) return a == 0 ? 0 : p_ - a;
  Elem r = 0, w = 1;
  for (int i = 0; i < f_; ++i) {
    u64 d = a % p_;
    r += (d == 0 ? 0 : p_ - d) * w;
    w *= p_;
    a /= p_;
  }
  return r;
}

GF::Elem GF::sub(Elem a, Elem b) const { return add(a, neg(b)); }

GF::Elem GF::mul_slow(Elem a, Elem b) const {
  if (f_ == 1) return mulmod(a, b, p_);
  auto da = digits(a), db = digits(b);
  std::vector<u64> prod(static_cast<std::size_t>(2 * f_ - 1), 0);
  for (int i = 0; i < f_; ++i)
    for (int j = 0; j < f_; ++j) prod[i + j] = (prod[i + j] + mulmod(da[i], db[j], p_)) % p_;
  for (int k = 2 * f_ - 2; k >= f_; --k) {
    u64 c = prod[k];
    if (c == 0) continue;
    for (int i = 0; i < f_; ++i) prod[k - f_ + i] = (prod[k - f_ + i] + p_ - mulmod(c, h_[i], p_)) % p_;
    prod[k] = 0;
  }
  prod.resize(static_cast<std::size_t>(f_));
  return from_digits(prod);
}

GF::Elem GF::mul(Elem a, Elem b) const {
  if (a == 0 || b == 0) return 0;
  if (f_ == 1) return mulmod(a, b, p_);
  if (!exp_.empty()) {
    u64 s = static_cast<u64>(log_[a]) + log_[b];
    if (s >= q_ - 1) s -= q_ - 1;
    return exp_[s];
  }
  return mul_slow(a, b);
}

GF::Elem GF::pow(Elem a, const Int& e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  Int ee = mod_floor(e, Int(static_cast<unsigned long>(q_ - 1)));
  u64 k = ee.get_ui();
  if (!exp_.empty()) return exp_[static_cast<u64>((static_cast<u128>(log_[a]) * k) % (q_ - 1))];
  Elem r = 1, b = a;
  while (k) {
    if (k & 1) r = mul(r, b);
    b = mul(b, b);
    k >>= 1;
  }
  return r;
}

GF::Elem GF::inv(Elem a) const {
  if (a == 0) throw InvariantError("gf", "inverse of zero");
  if (f_ == 1) return inv_mod(Int(static_cast<unsigned long>(a)), Int(static_cast<unsigned long>(p_))).get_ui();
  if (!exp_.empty()) return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
  return pow(a, Int(static_cast<unsigned long>(q_ - 2)));
}

GF::Elem GF::pth_root(Elem a) const {
  return pow(a, ipow(Int(static_cast<unsigned long>(p_)), static_cast<unsigned long>(f_ - 1)));
}

GF::Elem GF::from_digits(const std::vector<std::uint64_t>& d) const {
  Elem r = 0, w = 1;
  for (int i = 0; i < f_; ++i) {
    if (static_cast<std::size_t>(i) < d.size()) r += (d[i] % p_) * w;
    w *= p_;
  }
  return r;
}

std::vector<std::uint64_t> GF::digits(Elem a) const {
  std::vector<u64> d(static_cast<std::size_t>(f_));
  for (int i = 0; i < f_; ++i) {
    d[i] = a % p_;
    a /= p_;
  }
  return d;
}

GF::Elem GF::from_int(const Int& x) const {
  return mod_floor(x, Int(static_cast<unsigned long>(p_))).get_ui();
}

int gf_degree(const GFPoly& a) { return static_cast<int>(a.size()) - 1; }

void gf_trim(GFPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

GFPoly gf_add(const GF& F, const GFPoly& a, const GFPoly& b) {
  GFPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i)
    r[i] = F.add(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
  gf_trim(r);
  return r;
}

GFPoly gf_sub(const GF& F, const GFPoly& a, const GFPoly& b) {
  GFPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i)
    r[i] = F.sub(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
  gf_trim(r);
  return r;
}

GFPoly gf_mul(const GF& F, const GFPoly& a, const GFPoly& b) {
  if (a.empty() || b.empty()) return {};
  GFPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
  }
  gf_trim(r);
  return r;
}

void gf_divrem(const GF& F, const GFPoly& a, const GFPoly& b, GFPoly& q, GFPoly& r) {
  if (b.empty()) throw InvariantError("gf", "division by zero polynomial");
  r = a;
  gf_trim(r);
  const int db = gf_degree(b);
  q.assign(r.size() >= b.size() ? r.size() - b.size() + 1 : 0, 0);
  const GF::Elem lead_inv = F.inv(b.back());
  while (gf_degree(r) >= db) {
    const int dr = gf_degree(r);
    GF::Elem c = F.mul(r.back(), lead_inv);
    q[static_cast<std::size_t>(dr - db)] = c;
    for (int j = 0; j <= db; ++j)
      r[static_cast<std::size_t>(dr - db + j)] = F.sub(r[static_cast<std::size_t>(dr - db + j)], F.mul(c, b[j]));
    gf_trim(r);
  }
  gf_trim(q);
}

GFPoly gf_rem(const GF& F, const GFPoly& a, const GFPoly& b) {
  GFPoly q, r;
  gf_divrem(F, a, b, q, r);
  return r;
}

GFPoly gf_monic(const GF& F, const GFPoly& a) {
  if (a.empty()) return a;
  GF::Elem li = F.inv(a.back());
  GFPoly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = F.mul(a[i], li);
  return r;
}

GFPoly gf_gcd(const GF& F, GFPoly a, GFPoly b) {
  gf_trim(a);
  gf_trim(b);
  while (!b.empty()) {
    GFPoly r = gf_rem(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return gf_monic(F, a);
}

GFPoly gf_powmod(const GF& F, const GFPoly& a, const Int& e, const GFPoly& mod) {
  GFPoly result{1};
  result = gf_rem(F, result, mod);
  GFPoly base = gf_rem(F, a, mod);
  const long bits = bit_length(e);
  for (long i = bits - 1; i >= 0; --i) {
    result = gf_rem(F, gf_mul(F, result, result), mod);
    if (mpz_tstbit(e.get_mpz_t(), static_cast<mp_bitcnt_t>(i))) result = gf_rem(F, gf_mul(F, result, base), mod);
  }
  return result;
}

GFPoly gf_derivative(const GF& F, const GFPoly& a) {
  if (a.size() <= 1) return {};
  GFPoly r(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = F.mul(a[i], F.from_int(Int(static_cast<unsigned long>(i))));
  gf_trim(r);
  return r;
}

GF::Elem gf_eval(const GF& F, const GFPoly& a, GF::Elem x) {
  GF::Elem acc = 0;
  for (std::size_t i = a.size(); i-- > 0;) acc = F.add(F.mul(acc, x), a[i]);
  return acc;
}

namespace {

// Equal-degree splitting of a squarefree product of irreducibles of degree d.
void edf(const GF& F, const GFPoly& f, int d, std::mt19937_64& rng, std::vector<GFPoly>& out) {
  const int n = gf_degree(f);
  if (n == d) {
    out.push_back(f);
    return;
  }
  const Int q(static_cast<unsigned long>(F.size()));
  const bool even = F.p() == 2;
  Int half = (ipow(q, static_cast<unsigned long>(d)) - 1) / 2;
  std::uniform_int_distribution<std::uint64_t> coeff(0, F.size() - 1);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    GFPoly a(static_cast<std::size_t>(n));
    for (auto& c : a) c = coeff(rng);
    gf_trim(a);
    if (gf_degree(a) < 1) continue;
    GFPoly b;
    if (even) {
      GFPoly t = a, acc = a;
      const int steps = d * F.degree();
      for (int i = 1; i < steps; ++i) {
        t = gf_rem(F, gf_mul(F, t, t), f);
        acc = gf_add(F, acc, t);
      }
      b = acc;
    } else {
      b = gf_sub(F, gf_powmod(F, a, half, f), GFPoly{1});
    }
    GFPoly g = gf_gcd(F, f, b);
    if (gf_degree(g) > 0 && gf_degree(g) < n) {
      GFPoly q1, r1;
      gf_divrem(F, f, g, q1, r1);
      edf(F, g, d, rng, out);
      edf(F, gf_monic(F, q1), d, rng, out);
      return;
    }
  }
  throw InvariantError("gf", "equal-degree factorization did not split");
}

bool poly_less(const GFPoly& a, const GFPoly& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = a.size(); i-- > 0;)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

void squarefree_parts(const GF& F, const GFPoly& f, int mult, std::vector<std::pair<GFPoly, int>>& out) {
  if (gf_degree(f) <= 0) return;
  GFPoly df = gf_derivative(F, f);
  GFPoly c = gf_gcd(F, f, df);
  GFPoly w, r;
  gf_divrem(F, f, c, w, r);
  int i = 1;
  while (gf_degree(w) > 0) {
    GFPoly y = gf_gcd(F, w, c);
    GFPoly fac;
    gf_divrem(F, w, y, fac, r);
    if (gf_degree(fac) > 0) out.emplace_back(gf_monic(F, fac), i * mult);
    w = y;
    GFPoly cq;
    gf_divrem(F, c, y, cq, r);
    c = cq;
    ++i;
  }
  if (gf_degree(c) > 0) {
    const std::uint64_t p = F.p();
    GFPoly root(static_cast<std::size_t>(gf_degree(c)) / p + 1, 0);
    for (std::size_t k = 0; k < root.size(); ++k) root[k] = F.pth_root(c[k * p]);
    gf_trim(root);
    squarefree_parts(F, gf_monic(F, root), mult * static_cast<int>(p), out);
  }
}

}  // namespace

bool gf_is_irreducible(const GF& F, const GFPoly& g0, GFPoly* witness) {
  GFPoly g = gf_monic(F, g0);
  const int n = gf_degree(g);
  if (n < 1) throw InputError("gf", "irreducibility of a constant");
  if (n == 1) return true;
  const Int q(static_cast<unsigned long>(F.size()));
  const GFPoly x{0, 1};
  GFPoly h = gf_rem(F, x, g);
  for (int j = 1; j <= n / 2; ++j) {
    h = gf_powmod(F, h, q, g);
    GFPoly d = gf_gcd(F, g, gf_sub(F, h, x));
    if (gf_degree(d) > 0) {
      if (witness) {
        std::mt19937_64 rng(0x5eedULL);
        std::vector<GFPoly> parts;
        edf(F, d, j, rng, parts);
        std::sort(parts.begin(), parts.end(), poly_less);
        *witness = parts.front();
      }
      return false;
    }
  }
  return true;
}

std::vector<std::pair<GFPoly, int>> gf_factor(const GF& F, const GFPoly& g0) {
  GFPoly g = gf_monic(F, g0);
  std::vector<std::pair<GFPoly, int>> sqf;
  squarefree_parts(F, g, 1, sqf);
  std::vector<std::pair<GFPoly, int>> out;
  std::mt19937_64 rng(0x5eedULL);
  const Int q(static_cast<unsigned long>(F.size()));
  const GFPoly x{0, 1};
  for (auto& [part, mult] : sqf) {
    GFPoly rest = part;
    GFPoly h = gf_rem(F, x, rest);
    for (int i = 1; gf_degree(rest) >= 2 * i; ++i) {
      h = gf_powmod(F, h, q, rest);
      GFPoly d = gf_gcd(F, rest, gf_sub(F, h, x));
      if (gf_degree(d) > 0) {
        std::vector<GFPoly> parts;
        edf(F, d, i, rng, parts);
        for (auto& pp : parts) out.emplace_back(pp, mult);
        GFPoly qq, rr;
        gf_divrem(F, rest, d, qq, rr);
        rest = gf_monic(F, qq);
        h = gf_rem(F, h, rest);
      }
    }
    if (gf_degree(rest) > 0) out.emplace_back(rest, mult);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (poly_less(a.first, b.first)) return true;
    if (poly_less(b.first, a.first)) return false;
    return a.second < b.second;
  });
  return out;
}

std::vector<std::uint64_t> smallest_irreducible(std::uint64_t p, int f) {
  if (f < 1) throw InputError("gf", "degree must be positive");
  GF Fp = GF::prime_field(p);
  Int count = ipow(Int(static_cast<unsigned long>(p)), static_cast<unsigned long>(f));
  for (Int n = 0; n < count; ++n) {
    GFPoly g(static_cast<std::size_t>(f) + 1, 0);
    Int t = n;
    for (int i = 0; i < f; ++i) {
      g[i] = mod_floor(t, Int(static_cast<unsigned long>(p))).get_ui();
      t /= static_cast<unsigned long>(p);
    }
    g[f] = 1;
    if (gf_is_irreducible(Fp, g)) return g;
  }
  throw InvariantError("gf", "no irreducible polynomial found");
}

GFPoly reduce_mod_p(const ZPoly& f, std::uint64_t p) {
  GFPoly r(f.size());
  const Int P(static_cast<unsigned long>(p));
  for (std::size_t i = 0; i < f.size(); ++i) r[i] = mod_floor(f[i], P).get_ui();
  gf_trim(r);
  return r;
}

}  // namespace tpadic
