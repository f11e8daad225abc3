#include "tpadic/verify.hpp"

#include <algorithm>
#include <cmath>

#include "tpadic/error.hpp"

namespace tpadic {

namespace kernels {

void splitting_conditions(const LocalField& E, const LocalPoly& g, std::span<const LocalElem> x0s, int b,
                          std::vector<RootCertificate>& out, std::vector<LocalPoly>* taylor, Exec exec) {
  const long n = static_cast<long>(x0s.size());
  out.assign(x0s.size(), RootCertificate{});
  if (taylor) taylor->assign(x0s.size(), LocalPoly{});
  auto body = [&](long i) {
    RootCertificate& r = out[static_cast<std::size_t>(i)];
    r.index = static_cast<std::size_t>(i);
    LocalPoly T = taylor_coefficients(E, g, x0s[static_cast<std::size_t>(i)]);
    const int v1 = E.valuation(T[1]);
    if (v1 >= T[1].prec) {
      r.decided = false;
      r.failure = "g'(x0) is precision-zero";
      return;
    }
    r.a = v1;
    const long ab = static_cast<long>(r.a) + b;
    r.v_g = E.valuation(T[0]);
    if (r.v_g >= T[0].prec && r.v_g <= ab) {
      r.decided = false;
      r.failure = "condition (i) undecidable";
      return;
    }
    r.cond1 = r.v_g > ab;
    long slack = INT_MAX;
    for (std::size_t nu = 2; nu < T.size(); ++nu) {
      const long rhs = static_cast<long>(r.a) - static_cast<long>(nu - 1) * b;
      const int v = E.valuation(T[nu]);
      if (v >= T[nu].prec && v < rhs) {
        r.decided = false;
        r.failure = "condition (iii) undecidable at nu = " + std::to_string(nu);
        return;
      }
      slack = std::min(slack, static_cast<long>(v) - rhs);
    }
    r.slack3 = static_cast<int>(std::min<long>(slack, INT_MAX));
    r.cond3 = r.slack3 >= 0;
    if (!r.cond1)
      r.failure = "condition (i): v(g(x0)) = " + std::to_string(r.v_g) + " <= a + b = " + std::to_string(ab);
    else if (!r.cond3)
      r.failure = "condition (iii): slack " + std::to_string(r.slack3);
    if (taylor) (*taylor)[static_cast<std::size_t>(i)] = std::move(T);
  };
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < n; ++i) body(i);
  } else {
    for (long i = 0; i < n; ++i) body(i);
  }
}

}  // namespace kernels

SplittingCertificate verify_splitting(const LocalField& E, const LocalPoly& g, std::span<const LocalElem> x0s, int b,
                                      Exec exec) {
  if (g.size() < 2) throw InputError("verify", "polynomial of degree < 1");
  SplittingCertificate cert;
  cert.b = b;
  cert.precision = E.precision();
  cert.degree = g.size() - 1;
  std::vector<LocalPoly> taylor;
  kernels::splitting_conditions(E, g, x0s, b, cert.roots, &taylor, exec);
  for (const auto& r : cert.roots)
    if (!r.decided) throw PrecisionError("verify", "x0 #" + std::to_string(r.index) + ": " + r.failure);
  for (const auto& r : cert.roots) {
    cert.a_max = std::max(cert.a_max, r.a);
    if (!r.failure.empty()) cert.failures.push_back("x0 #" + std::to_string(r.index) + ": " + r.failure);
  }
  cert.separation = max_pairwise_valuation(E, x0s, b + 1);
  if (cert.separation > b)
    cert.failures.push_back("two points x0 agree modulo P^" + std::to_string(b + 1));

  const long n = static_cast<long>(x0s.size());
  std::vector<LocalElem> lifted(x0s.size());
  std::vector<std::string> errs(x0s.size());
  std::vector<char> prec_fail(x0s.size(), 0);
  auto body = [&](long i) {
    const std::size_t u = static_cast<std::size_t>(i);
    RootCertificate& r = cert.roots[u];
    if (!r.cond1 || !r.cond3) return;
    try {
      lifted[u] = hensel_root(E, g, taylor[u], x0s[u], r.a, b).root;
      r.lifted = true;
    } catch (const PrecisionError& e) {
      prec_fail[u] = 1;
      errs[u] = e.what();
    } catch (const Error& e) {
      errs[u] = e.what();
    }
  };
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < n; ++i) body(i);
  } else {
    for (long i = 0; i < n; ++i) body(i);
  }
  for (std::size_t i = 0; i < x0s.size(); ++i) {
    if (prec_fail[i]) throw PrecisionError("verify", errs[i]);
    if (!errs[i].empty()) cert.failures.push_back("x0 #" + std::to_string(i) + ": lifting failed: " + errs[i]);
  }
  std::vector<LocalElem> roots;
  int L = E.capacity();
  for (std::size_t i = 0; i < x0s.size(); ++i)
    if (cert.roots[i].lifted) {
      roots.push_back(lifted[i]);
      L = std::min(L, lifted[i].prec);
    }
  cert.lifted_separation = roots.size() > 1 ? max_pairwise_valuation(E, roots, L) : 0;
  if (cert.lifted_separation >= L) cert.failures.push_back("lifted roots are not pairwise distinct");
  else cert.certified = roots.size();
  if (x0s.size() != cert.degree)
    cert.failures.push_back(std::to_string(x0s.size()) + " points for a polynomial of degree " + std::to_string(cert.degree));
  return cert;
}

LocalPoly embed_poly(const LocalSetup& L, const std::vector<AlgebraicInt>& g) {
  LocalPoly out;
  out.reserve(g.size());
  for (const auto& c : g) out.push_back(L.iota(*L.E, c));
  return out;
}

SplittingCertificate verify_splitting(const Construction& C, std::size_t i, const std::vector<AlgebraicInt>& g,
                                      Exec exec) {
  const PrimeRun& run = C.primes.at(i);
  const int b = run.k + static_cast<int>(C.plan.c.get_si()) - 1;
  SplittingCertificate cert = verify_splitting(*run.local.E, embed_poly(run.local, g), run.At.elements, b, exec);
  cert.prime_index = i;
  if (cert.a_max + b >= run.T)
    cert.failures.push_back("a + b = " + std::to_string(cert.a_max + b) + " not below e_i m_i = " + std::to_string(run.T));
  return cert;
}

IrreducibilityCertificate verify_irreducible(const NumberField& K, const PrimeIdealData& P0,
                                             const std::vector<AlgebraicInt>& g, const std::vector<AlgebraicInt>& g0) {
  IrreducibilityCertificate cert;
  cert.congruent = g.size() == g0.size();
  for (std::size_t j = 0; cert.congruent && j < g.size(); ++j)
    if (!ideal_contains(P0.ideal, g[j] - g0[j])) cert.congruent = false;
  if (g.size() < 2 || !(g.back() == K.one())) return cert;
  const ResidueMap R(K, P0);
  GFPoly h;
  for (const auto& c : g) h.push_back(R(c));
  GFPoly w;
  cert.irreducible = gf_is_irreducible(R.field(), h, &w);
  if (!cert.irreducible) cert.witness = w;
  return cert;
}

std::vector<std::string> global_condition_failures(const Construction& C, const std::vector<AlgebraicInt>& g) {
  std::vector<std::string> out;
  const NumberField& K = C.K;
  const std::size_t D = C.plan.degree.get_ui();
  if (g.size() != D + 1 || !(g.back() == K.one())) {
    out.push_back("(1) g is not monic of degree d r");
    return out;
  }
  for (std::size_t j = 0; j < D; ++j)
    if (!ideal_contains(C.P0.ideal, g[j] - C.g0[j])) {
      out.push_back("(2) coefficient " + std::to_string(j) + " differs from g0 modulo p0");
      break;
    }
  Int norm = C.P0.norm;
  for (std::size_t i = 0; i < C.primes.size(); ++i) {
    const PrimeRun& run = C.primes[i];
    const IdealHNF Pm = ideal_pow(K, run.local.P.ideal, run.m.get_ui());
    norm *= Pm.norm;
    for (std::size_t j = 0; j < D; ++j)
      if (!ideal_contains(Pm, g[j] - run.gi[j])) {
        out.push_back("(3) coefficient " + std::to_string(j) + " differs from g_" + std::to_string(i + 1) +
                      " modulo p_i^m_i");
        break;
      }
  }
  long bits = 0;
  for (const auto& c : g)
    for (const auto& x : c.coords) bits = std::max(bits, bit_length(x));
  const EmbeddingTable t = K.embeddings(static_cast<mpfr_prec_t>(bits + 192));
  const mpfr_prec_t wp = t.precision;
  Real root(wp);
  const Real nr(norm, wp);
  mpfr_rootn_ui(root.get(), nr.get(), static_cast<unsigned long>(K.degree()), MPFR_RNDU);
  const Real bound = K.delta(wp) * root;
  std::vector<Complex> v;
  std::vector<Real> err;
  for (std::size_t j = 0; j < D; ++j) {
    K.embed(g[j], t, v, err);
    for (std::size_t pl = 0; pl < v.size(); ++pl)
      if (abs(v[pl]) + err[pl] > bound) {
        out.push_back("(4) coefficient " + std::to_string(j) + " exceeds delta_K N(a)^{1/m}");
        return out;
      }
  }
  return out;
}

HeightInputs height_inputs(const Construction& C) {
  HeightInputs in;
  in.plan = C.plan;
  in.field_degree = C.K.degree();
  in.log_delta = C.K.log_delta();
  in.norm_p0 = C.P0.norm;
  in.log_B = C.g.log_B;
  for (std::size_t i = 0; i < C.primes.size(); ++i) {
    const PrimeRun& r = C.primes[i];
    in.primes.push_back(PrimeTerm{r.spec.p, r.local.P.f, r.spec.e, C.plan.x[i], r.k, r.m});
  }
  return in;
}

HeightReport height_bound(const HeightInputs& in) {
  HeightReport h;
  const DegreePlan& P = in.plan;
  const long double D = to_ld(Rat(P.degree));
  const long double lD = std::log(D);
  const long double m = in.field_degree;
  const long double n = P.n;
  const long double C = to_ld(Rat(P.C));
  const long double eps = to_ld(P.eps);
  h.log_B = in.log_B;
  h.anchor = (in.log_delta + log_int(in.norm_p0) / m + 0.5L * std::log1p(D)) / D;
  long double second = 0;
  for (const auto& t : in.primes) {
    const long double lp = log_int(t.p);
    h.main += t.f_p * lp / (m * t.e * to_ld(Rat(t.x - 1)));
    second += to_ld(Rat(t.m) / Rat(P.degree)) * t.f_p * lp / m;
  }
  h.eps_term = n * eps;
  h.error_term = 13 * n * std::pow(C, 2 * n + 2) * lD / D;
  h.total = h.main + h.eps_term + h.error_term;
  h.bo_h = (in.log_B + 0.5L * std::log1p(D)) / D;
  if (P.n == 0) return h;

  const long double slack = 1e-12L;
  auto require = [&](bool ok, const std::string& what) {
    if (!ok) h.chain_failures.push_back(what);
  };
  for (std::size_t i = 0; i < in.primes.size(); ++i) {
    const PrimeTerm& t = in.primes[i];
    const Rat er = Rat(t.e) * Rat(P.r);
    const Int xk = ipow(t.x, static_cast<unsigned long>(t.k));
    const Rat lhs = Rat(t.m) / Rat(P.degree);
    const Rat rhs = Rat(xk - 1) / (Rat(t.e) * Rat(t.x - 1) * Rat(P.r)) + Rat(t.k) / er + Rat(2 * P.c) / er;
    const std::string tag = "prime " + std::to_string(i + 1) + ": ";
    require(lhs == rhs, tag + "m_i/deg differs from its decomposition");
    require(Rat(xk - 1) / Rat(P.r) <= 1 + P.eps, tag + "(x^k - 1)/r > 1 + eps");
    require(to_ld(Rat(t.k) / er) <= 3 * std::pow(C, n) * lD / D + slack, tag + "k/(e r) above 3 C^n log(deg)/deg");
    require(Rat(2 * P.c) / er <= Rat(8 * ipow(P.C, static_cast<unsigned long>(2 * P.n + 1))) / Rat(P.degree),
            tag + "2c/(e r) above 8 C^{2n+1}/deg");
    require(to_ld(lhs) <= (1 + eps) / (t.e * to_ld(Rat(t.x - 1))) + 11 * std::pow(C, 2 * n + 1) * lD / D + slack,
            tag + "m_i/deg above its bound");
  }
  require(second <= h.main + h.eps_term + 11 * n * std::pow(C, 2 * n + 2) * lD / D + slack,
          "second summand above main + n eps + 11 n C^{2n+2} log(deg)/deg");
  require(h.anchor <= 2 * n * std::pow(C, 2 * n + 1) * lD / D + slack, "anchor term above 2 n C^{2n+1} log(deg)/deg");
  require(std::fabs(h.bo_h - (h.anchor + second)) <= 1e-9L * std::max(1.0L, h.bo_h), "log B does not decompose");
  require(h.bo_h <= h.total + slack, "log(B sqrt(deg+1))/deg above the theorem bound");
  return h;
}

ExactHeight exact_height(const NumberField& K, const std::vector<AlgebraicInt>& g, long double tol,
                         std::optional<long double> log_B, Exec exec) {
  if (g.size() < 2 || !(g.back() == K.one())) throw InputError("verify", "exact_height needs a monic polynomial");
  const std::size_t D = g.size() - 1;
  long bits = 0;
  for (const auto& c : g)
    for (const auto& x : c.coords) bits = std::max(bits, bit_length(x));
  const int places = K.real_places() + K.complex_places();
  ExactHeight h;
  const long double scale = static_cast<long double>(K.degree()) * static_cast<long double>(D);
  for (int pl = 0; pl < places; ++pl) {
    auto provider = [&](mpfr_prec_t prec, std::vector<Complex>& c, std::vector<Real>& err) {
      const EmbeddingTable t = K.embeddings(prec + 32);
      c.clear();
      err.clear();
      std::vector<Complex> v;
      std::vector<Real> e;
      for (const auto& a : g) {
        K.embed(a, t, v, e);
        c.push_back(v[static_cast<std::size_t>(pl)]);
        err.push_back(e[static_cast<std::size_t>(pl)]);
      }
    };
    const MahlerValue mv = log_mahler(provider, std::max<mpfr_prec_t>(128, bits + 128), tol / 4, exec);
    const long double w = pl < K.real_places() ? 1 : 2;
    h.place_log_mahler.push_back(mv.log_mahler);
    h.value += w * mv.log_mahler / scale;
    h.error += w * mv.error / scale;
    if (log_B && mv.log_mahler - mv.error > *log_B + 0.5L * std::log1p(static_cast<long double>(D)) + 1e-12L)
      throw InvariantError("verify", "M(sigma g) exceeds B sqrt(deg + 1)");
  }
  return h;
}

ExactHeight exact_height(const ZPoly& g, long double tol, Exec exec) {
  if (!is_monic(g) || degree(g) < 1) throw InputError("verify", "exact_height needs a monic polynomial");
  const MahlerValue mv = log_mahler(g, tol, exec);
  ExactHeight h;
  const long double D = degree(g);
  h.place_log_mahler.push_back(mv.log_mahler);
  h.value = mv.log_mahler / D;
  h.error = mv.error / D;
  return h;
}

long double lower_bound_value(int field_degree, const std::vector<LocalDegrees>& primes) {
  if (field_degree != 1) throw UnsupportedError("verify", "the lower bound formula is stated for K = Q only");
  long double s = 0;
  for (const auto& t : primes) s += log_int(t.p) / (t.e * (to_ld(Rat(ipow(t.p, static_cast<unsigned long>(t.f)))) + 1));
  return s / 2;
}

}  // namespace tpadic
