#include "tpadic/construct.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "tpadic/error.hpp"

namespace tpadic {

namespace {

ZPoly from_u64(const std::vector<std::uint64_t>& c) {
  ZPoly f;
  for (auto x : c) f.push_back(Int(static_cast<unsigned long>(x)));
  return f;
}

int env_int(const char* name, int fallback) {
  const char* v = std::getenv(name);
  if (!v || !*v) return fallback;
  return std::atoi(v);
}

std::vector<GF::Elem> key_digits(const LocalField& E, const LocalElem& x) {
  return E.digits(x, x.prec);
}

}  // namespace

LocalEmbedding::LocalEmbedding(const NumberField& K, const PrimeIdealData& P, const LocalField& E, SubField base) {
  const LocalPoly f = to_local_poly(E, K.min_poly());
  const LocalPoly h = to_local_poly(E, P.residue_poly);
  std::vector<LocalElem> over;
  for (auto& r : local_roots(E, f))
    if (E.valuation(poly_eval(E, h, r)) >= 1) over.push_back(std::move(r));
  if (over.empty()) throw InputError("construct", "E does not contain the completion of K at the chosen prime");
  std::sort(over.begin(), over.end(),
            [&](const LocalElem& a, const LocalElem& b) { return key_digits(E, a) < key_digits(E, b); });
  theta_ = f_part(E, base, over.front());

  std::vector<LocalElem> pw{E.one()};
  for (int a = 1; a < K.degree(); ++a) pw.push_back(E.mul(pw.back(), theta_));
  for (const auto& row : K.basis()) {
    Int den = 1;
    for (const auto& b : row) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), b.get_den_mpz_t());
    LocalElem acc = E.zero();
    for (std::size_t a = 0; a < row.size(); ++a) {
      const Int num = row[a].get_num() * (den / row[a].get_den());
      if (num != 0) acc = E.add(acc, E.mul_int(num, pw[a]));
    }
    basis_.push_back(den == 1 ? acc : E.divide(acc, E.from_int(den)));
  }
}

LocalElem LocalEmbedding::operator()(const LocalField& E, const AlgebraicInt& x) const {
  LocalElem acc = E.zero();
  for (std::size_t j = 0; j < basis_.size(); ++j)
    if (x.coords[j] != 0) acc = E.add(acc, E.mul_int(x.coords[j], basis_[j]));
  return acc;
}

LocalSetup setup_local(const NumberField& K, const PrimeSpec& spec, int N) {
  const std::vector<PrimeIdealData> Ps = decompose_prime(K, spec.p);
  if (spec.index < 0 || spec.index >= static_cast<int>(Ps.size()))
    throw InputError("construct", "prime index " + std::to_string(spec.index) + " out of range for p = " + spec.p.get_str());
  LocalSetup L;
  L.P = Ps[static_cast<std::size_t>(spec.index)];
  L.requested_precision = N;
  const int e_abs = L.P.e * spec.e, f_abs = L.P.f * spec.f;
  if (spec.e < 1 || spec.f < 1) throw InputError("construct", "e and f must be positive");

  ZPoly U = spec.unramified, Eis = spec.eisenstein;
  if (!U.empty()) {
    if (std::max(degree(U), 1) != f_abs)
      throw InputError("construct", "unramified polynomial has degree " + std::to_string(degree(U)) + ", expected " + std::to_string(f_abs));
  } else if (f_abs > 1) {
    U = spec.f == 1 ? L.P.residue_poly : from_u64(smallest_irreducible(spec.p.get_ui(), f_abs));
  }
  if (!Eis.empty()) {
    if (std::max(degree(Eis), 1) != e_abs)
      throw InputError("construct", "Eisenstein polynomial has degree " + std::to_string(degree(Eis)) + ", expected " + std::to_string(e_abs));
  } else if (e_abs > 1) {
    throw InputError("construct", "a ramified E needs an explicit Eisenstein polynomial");
  }

  if (L.P.e == 1 && L.P.f == 1)
    L.base = SubField::Qp;
  else if (L.P.e == e_abs && L.P.f == f_abs)
    L.base = SubField::Whole;
  else if (L.P.e == 1 && L.P.f == f_abs)
    L.base = SubField::Unramified;
  else
    throw UnsupportedError("construct", "completion is not Q_p, the unramified part or all of E");

  const int loss = e_abs * vp(discriminant(K.min_poly()), spec.p) + 2;
  L.E = std::make_shared<const LocalField>(spec.p, U, Eis, N + loss);
  L.G = galois_group(*L.E, L.base);
  if (L.G.e_rel != spec.e || L.G.f_rel != spec.f)
    throw InvariantError("construct", "Galois group does not match the requested e, f");
  L.iota = LocalEmbedding(K, L.P, *L.E, L.base);
  for (int j = 0; j < K.degree(); ++j) {
    AlgebraicInt w = K.zero();
    w.coords[static_cast<std::size_t>(j)] = 1;
    if (L.iota(*L.E, w).prec < N) throw PrecisionError("construct", "embedding of the integral basis lost precision");
  }
  return L;
}

Int compute_m(const Int& d, int e_rel, const Int& x, int k, const Int& c) {
  if (d % e_rel != 0) throw InvariantError("construct", "e_i does not divide d");
  const Int geo = (ipow(x, static_cast<unsigned long>(k)) - 1) / (x - 1);
  return (d / e_rel) * (geo + k + 2 * c);
}

GlobalConstants global_constants(const NumberField& K, const JobConfig& cfg) {
  GlobalConstants g;
  g.d = 1;
  g.C = std::max(Int(K.degree()), Int(abs(K.discriminant())));
  std::set<std::pair<Int, int>> seen;
  for (const auto& s : cfg.primes) {
    if (!seen.insert({s.p, s.index}).second) throw InputError("construct", "prime listed twice");
    if (s.p < 2 || !is_prime(s.p.get_ui())) throw InputError("construct", "p = " + s.p.get_str() + " is not prime");
    const auto Ps = decompose_prime(K, s.p);
    if (s.index < 0 || s.index >= static_cast<int>(Ps.size()))
      throw InputError("construct", "prime index " + std::to_string(s.index) + " out of range for p = " + s.p.get_str());
    const PrimeIdealData& P = Ps[static_cast<std::size_t>(s.index)];
    g.P.push_back(P);
    const Int x = ipow(P.norm, static_cast<unsigned long>(s.f));
    g.x.push_back(x);
    g.d *= s.e * s.f;
    g.C = std::max({g.C, Int(s.e * s.f), x});
  }
  if (g.C < 2) g.C = 2;
  return g;
}

LocalPoly build_local_poly(const LocalField& E, SubField base, const RepSet& At) {
  LocalPoly g{E.one()};
  for (const auto& a : At.elements) {
    LocalPoly next(g.size() + 1, E.zero());
    for (std::size_t j = 0; j < g.size(); ++j) {
      next[j + 1] = E.add(next[j + 1], g[j]);
      next[j] = E.sub(next[j], E.mul(a, g[j]));
    }
    g = std::move(next);
  }
  for (std::size_t j = 0; j + 1 < g.size(); ++j) g[j] = f_part(E, base, g[j]);
  g.back() = E.one();
  return g;
}

std::vector<int> derivative_valuations(const LocalField& E, const std::vector<LocalElem>& roots, int L) {
  std::vector<std::vector<GF::Elem>> keys;
  keys.reserve(roots.size());
  for (const auto& r : roots) keys.push_back(E.digits(r, L));
  std::vector<int> out(roots.size(), 0);
  for (std::size_t i = 0; i < roots.size(); ++i)
    for (std::size_t j = 0; j < roots.size(); ++j) {
      if (i == j) continue;
      int l = 0;
      while (l < L && keys[i][static_cast<std::size_t>(l)] == keys[j][static_cast<std::size_t>(l)]) ++l;
      if (l >= L) throw InvariantError("construct", "two roots agree to the digit horizon");
      out[i] += l;
    }
  return out;
}

namespace {

struct DigitTable {
  std::map<GF::Elem, AlgebraicInt> digit;
  LocalElem pi_unit_inv;
  AlgebraicInt pi;
};

DigitTable digit_table(const NumberField& K, const LocalSetup& L) {
  const LocalField& E = *L.E;
  DigitTable t;
  const ResidueMap R(K, L.P);
  const SmallRepContext sr(K, L.P.ideal);
  const std::uint64_t q = R.field().size();
  for (std::uint64_t a = 0; a < q; ++a) {
    const AlgebraicInt delta = sr.reduce(R.lift(a));
    if (!t.digit.emplace(E.residue(L.iota(E, delta)), delta).second)
      throw InvariantError("construct", "residue digits collide in E");
  }
  t.pi = L.P.pi;
  const LocalElem pim = L.iota(E, t.pi);
  if (E.valuation(pim) != L.G.e_rel) throw InvariantError("construct", "v(pi_K) != e(E/F)");
  t.pi_unit_inv = E.inverse_unit(E.shift_down(pim, L.G.e_rel));
  return t;
}

AlgebraicInt expand(const NumberField& K, const LocalSetup& L, const DigitTable& t, const LocalElem& y, long m) {
  const LocalField& E = *L.E;
  AlgebraicInt x = K.zero(), pk = K.one();
  LocalElem cur = y;
  for (long j = 0; j < m; ++j) {
    if (E.is_precision_zero(cur) && cur.prec >= (m - j) * L.G.e_rel) break;
    auto it = t.digit.find(E.residue(cur));
    if (it == t.digit.end()) throw InvariantError("construct", "residue of an F-element is not in O_K/p");
    if (!it->second.is_zero()) x += K.mul(pk, it->second);
    if (j + 1 < m) {
      cur = E.mul(E.shift_down(E.sub(cur, L.iota(E, it->second)), L.G.e_rel), t.pi_unit_inv);
      pk = K.mul(pk, t.pi);
    }
  }
  return x;
}

AlgebraicInt approximate_with(const NumberField& K, const LocalSetup& L, const DigitTable& t,
                              const SmallRepContext& sr, const LocalElem& y, const Int& m) {
  const LocalField& E = *L.E;
  const int T = L.G.e_rel * static_cast<int>(m.get_si());
  if (y.prec < T) throw PrecisionError("construct", "coefficient known to " + std::to_string(y.prec) + " digits, need " + std::to_string(T));
  const AlgebraicInt z = sr.reduce(expand(K, L, t, y, m.get_si()));
  const LocalElem diff = E.sub(L.iota(E, z), y);
  if (diff.prec < T) throw PrecisionError("construct", "approximation check lost precision");
  if (E.valuation(diff) < T) throw InvariantError("construct", "global approximation is not close enough");
  return z;
}

}  // namespace

AlgebraicInt approximate_element(const NumberField& K, const LocalSetup& L, const LocalElem& y, const Int& m) {
  const DigitTable t = digit_table(K, L);
  const SmallRepContext sr(K, ideal_pow(K, L.P.ideal, m.get_ui()));
  return approximate_with(K, L, t, sr, f_part(*L.E, L.base, y), m);
}

std::vector<AlgebraicInt> approximate_to_global(const NumberField& K, const LocalSetup& L, const LocalPoly& gt,
                                                const Int& m) {
  const DigitTable t = digit_table(K, L);
  const SmallRepContext sr(K, ideal_pow(K, L.P.ideal, m.get_ui()));
  std::vector<AlgebraicInt> out;
  out.reserve(gt.size());
  for (std::size_t j = 0; j + 1 < gt.size(); ++j) out.push_back(approximate_with(K, L, t, sr, gt[j], m));
  out.push_back(K.one());
  return out;
}

Int smallest_excluded_prime(const std::vector<PrimeSpec>& primes) {
  std::uint64_t p = 2;
  auto used = [&](std::uint64_t c) {
    return std::any_of(primes.begin(), primes.end(), [&](const PrimeSpec& s) { return s.p == Int(static_cast<unsigned long>(c)); });
  };
  while (used(p)) p = next_prime(p);
  return Int(static_cast<unsigned long>(p));
}

std::vector<AlgebraicInt> choose_g0(const NumberField& K, const PrimeIdealData& P0, std::size_t degree,
                                    std::uint64_t seed) {
  if (degree < 1) throw InputError("construct", "degree must be >= 1");
  const ResidueMap R(K, P0);
  const GF& F = R.field();
  std::mt19937_64 rng(seed);
  GFPoly h(degree + 1, 0);
  h[degree] = 1;
  for (;;) {
    for (std::size_t j = 0; j < degree; ++j) h[j] = rng() % F.size();
    if (gf_is_irreducible(F, h)) break;
  }
  std::vector<AlgebraicInt> g;
  g.reserve(degree + 1);
  for (auto c : h) g.push_back(R.lift(c));
  return g;
}

std::string poly_hash(const std::vector<AlgebraicInt>& coeffs) {
  std::uint64_t h = 1469598103934665603ULL;
  auto feed = [&](const std::string& s) {
    for (unsigned char ch : s) {
      h ^= ch;
      h *= 1099511628211ULL;
    }
  };
  for (const auto& c : coeffs) {
    for (const auto& x : c.coords) feed(x.get_str() + ",");
    feed(";");
  }
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << h;
  return os.str();
}

GlobalPolynomial crt_merge(const NumberField& K, const PrimeIdealData& P0, const std::vector<AlgebraicInt>& g0,
                           const std::vector<std::pair<const PrimeIdealData*, const PrimeRun*>>& parts) {
  std::vector<IdealHNF> ideals{P0.ideal};
  for (const auto& [P, run] : parts) {
    if (run->gi.size() != g0.size()) throw InvariantError("construct", "local polynomial degrees differ");
    ideals.push_back(ideal_pow(K, P->ideal, run->m.get_ui()));
  }
  for (std::size_t i = 0; i < ideals.size(); ++i)
    for (std::size_t j = i + 1; j < ideals.size(); ++j)
      if (!coprime(K, ideals[i], ideals[j])) throw InvariantError("construct", "CRT moduli are not coprime");
  const CrtContext crt(K, ideals);
  GlobalPolynomial G;
  G.modulus = crt.modulus();
  const SmallRepContext sr(K, G.modulus);
  G.log_B = sr.log_bound();
  std::vector<AlgebraicInt> res(ideals.size());
  for (std::size_t j = 0; j + 1 < g0.size(); ++j) {
    res[0] = g0[j];
    for (std::size_t i = 0; i < parts.size(); ++i) res[i + 1] = parts[i].second->gi[j];
    G.coeffs.push_back(sr.reduce(crt(res)));
  }
  G.coeffs.push_back(K.one());
  return G;
}

void check_budget(const NumberField& K, const DegreePlan& plan, const std::vector<Int>& m, const std::vector<Int>& norms) {
  const long double D = to_ld(Rat(plan.degree));
  long double bits = 64;
  for (std::size_t i = 0; i < m.size(); ++i) bits += to_ld(Rat(m[i])) * log_int(norms[i]) / std::log(2.0L) / K.degree();
  const long double work = 3 * std::log2(D) + std::log2(std::max(1.0L, bits / 64)) + 2 * std::log2(static_cast<long double>(K.degree()));
  const int limit = env_int("TPADIC_MAX_WORK_BITS", 40);
  if (plan.degree > Int(1) << 24 || work > limit) {
    std::ostringstream os;
    os.precision(3);
    os << "degree " << plan.degree.get_str() << " with ~" << static_cast<long>(bits) << "-bit coefficients needs about 2^"
       << std::fixed << static_cast<double>(work) << " word operations, budget 2^" << limit;
    throw ResourceError("construct", os.str());
  }
  const long double mem = std::log2(D) + std::log2(bits / 8) + std::log2(static_cast<long double>(K.degree()));
  if (mem > 33) throw ResourceError("construct", "coefficient storage exceeds 8 GiB");
  for (const auto& mi : m)
    if (mi > Int(1) << 22) throw ResourceError("construct", "m_i = " + mi.get_str() + " exceeds the precision budget");
}

namespace {

void run_prime(const NumberField& K, const DegreePlan& plan, std::size_t i, int N, PrimeRun& out) {
  const PrimeSpec& spec = out.spec;
  const int d = static_cast<int>(plan.d.get_si());
  const int k = plan.k[i];
  out.local = setup_local(K, spec, N);
  const LocalField& E = *out.local.E;
  const GaloisAction& G = out.local.G;
  std::optional<LocalElem> hint;
  if (!spec.alpha.empty()) {
    if (spec.alpha.size() != static_cast<std::size_t>(E.degree())) throw InputError("construct", "alpha has the wrong number of coordinates");
    hint = E.from_coords(spec.alpha, E.capacity());
  }
  out.cc = c_constant(E, G, d, hint ? &*hint : nullptr);
  if (Int(out.cc.c) > plan.c)
    throw InvariantError("construct", "local constant c_i = " + std::to_string(out.cc.c) + " exceeds c = " + plan.c.get_str());
  out.A = build_repset(E, G, out.cc, d, k);
  const Int D = plan.degree;
  if (D > Int(static_cast<unsigned long>(out.A.elements.size()))) throw InvariantError("construct", "d r exceeds |A'|");
  out.At = select_invariant_subset(E, G, out.A, D.get_ui());
  out.gt = build_local_poly(E, out.local.base, out.At);

  const Int x = plan.x[i];
  out.derivative_bound = plan.d * ((ipow(x, static_cast<unsigned long>(k)) - 1) / (x - 1) + plan.c);
  const std::vector<int> dv = derivative_valuations(E, out.At.elements, k + out.cc.c);
  out.max_derivative_valuation = dv.empty() ? 0 : *std::max_element(dv.begin(), dv.end());
  if (Int(out.max_derivative_valuation) > out.derivative_bound)
    throw InvariantError("construct", "v(g~'(alpha)) above the claimed bound");

  out.gi = approximate_to_global(K, out.local, out.gt, out.m);
}

}  // namespace

namespace {

Construction run_pipeline(const JobConfig& cfg, NumberField K, const GlobalConstants& gc, const DegreePlan& plan) {
  Construction C;
  C.cfg = cfg;
  C.K = std::move(K);
  C.C = gc.C;
  C.plan = plan;
  const NumberField& KK = C.K;
  const std::size_t n = cfg.primes.size();

  std::vector<Int> ms, norms;
  for (std::size_t i = 0; i < n; ++i) {
    ms.push_back(compute_m(plan.d, cfg.primes[i].e, plan.x[i], plan.k[i], plan.c));
    norms.push_back(gc.P[i].norm);
  }
  check_budget(KK, plan, ms, norms);

  const int extra = env_int("TPADIC_EXTRA_PRECISION", cfg.extra_precision);
  for (std::size_t i = 0; i < n; ++i) {
    PrimeRun run;
    run.spec = cfg.primes[i];
    run.k = plan.k[i];
    run.m = ms[i];
    run.T = cfg.primes[i].e * static_cast<int>(ms[i].get_si());
    const int N0 = std::max(run.k + static_cast<int>(plan.c.get_si()), run.T) + extra;
    for (int attempt = 0;; ++attempt) {
      run.N = N0 << attempt;
      run.attempts = attempt + 1;
      try {
        run_prime(KK, plan, i, run.N, run);
        break;
      } catch (const PrecisionError& e) {
        run.retry_log.push_back("N = " + std::to_string(run.N) + ": " + e.what());
        if (attempt == 3) {
          std::string hist;
          for (const auto& h : run.retry_log) hist += (hist.empty() ? "" : "; ") + h;
          throw PrecisionError("construct", "prime " + run.spec.p.get_str() + " exhausted 4 attempts: " + hist);
        }
      }
    }
    C.primes.push_back(std::move(run));
  }

  C.p0 = smallest_excluded_prime(cfg.primes);
  C.P0 = decompose_prime(KK, C.p0).front();
  C.g0 = choose_g0(KK, C.P0, plan.degree.get_ui(), cfg.seed);
  C.g0_hash = poly_hash(C.g0);

  std::vector<std::pair<const PrimeIdealData*, const PrimeRun*>> parts;
  for (const auto& r : C.primes) parts.emplace_back(&r.local.P, &r);
  C.g = crt_merge(KK, C.P0, C.g0, parts);
  return C;
}

}  // namespace

Construction construct(const JobConfig& cfg) {
  NumberField K = NumberField::create(cfg.min_poly, cfg.basis);
  const GlobalConstants gc = global_constants(K, cfg);
  const DegreePlan plan = select_degree(static_cast<int>(cfg.primes.size()), gc.x, cfg.rho, cfg.eps, gc.d, gc.C);
  return run_pipeline(cfg, std::move(K), gc, plan);
}

Construction construct_with_plan(const JobConfig& cfg, const DegreePlan& plan) {
  NumberField K = NumberField::create(cfg.min_poly, cfg.basis);
  const GlobalConstants gc = global_constants(K, cfg);
  if (plan.n != static_cast<int>(cfg.primes.size()) || plan.x != gc.x || plan.d != gc.d ||
      plan.k.size() != cfg.primes.size())
    throw InputError("construct", "plan does not match the configured primes");
  if (plan.degree != plan.d * plan.r || plan.c < 1) throw InputError("construct", "inconsistent plan");
  for (std::size_t i = 0; i < plan.k.size(); ++i)
    if (plan.k[i] < 1 || ipow(plan.x[i], static_cast<unsigned long>(plan.k[i])) < plan.r)
      throw InputError("construct", "plan has x_i^k_i < r");
  return run_pipeline(cfg, std::move(K), gc, plan);
}

}  // namespace tpadic
