#include "tpadic/degree.hpp"

#include <algorithm>
#include <cmath>

#include "tpadic/error.hpp"

namespace tpadic {

long double log_int(const Int& x) {
  if (sgn(x) <= 0) throw InvariantError("degree", "log of a non-positive integer");
  long e = 0;
  const double m = mpz_get_d_2exp(&e, x.get_mpz_t());
  return std::log(static_cast<long double>(m)) + static_cast<long double>(e) * std::log(2.0L);
}

long double to_ld(const Rat& x) {
  if (sgn(x) == 0) return 0;
  const long double s = sgn(x) < 0 ? -1 : 1;
  return s * std::exp(log_int(abs(x.get_num())) - log_int(x.get_den()));
}

namespace {

long double log_rat(const Rat& x) { return log_int(x.get_num()) - log_int(x.get_den()); }

void fail(std::string* why, const std::string& msg) {
  if (why) *why = msg;
}

}  // namespace

DirichletResult dirichlet_approx(std::span<const Int> x, const Rat& rho, const Rat& eps) {
  const std::size_t n = x.size();
  if (n == 0) throw InputError("degree", "dirichlet_approx needs at least one x_i");
  for (const auto& xi : x)
    if (xi < 2) throw InputError("degree", "x_i must be >= 2");
  if (rho < 3) throw InputError("degree", "rho must be >= 3");
  if (eps <= 0 || eps >= 1) throw InputError("degree", "eps must lie in (0, 1)");
  const Int xmax = *std::max_element(x.begin(), x.end());
  const long double l1e = std::log1p(to_ld(eps));
  const std::uint64_t Q = static_cast<std::uint64_t>(std::ceil(2 * log_int(xmax) / l1e));
  long double qn = 1;
  for (std::size_t i = 0; i < n; ++i) qn *= static_cast<long double>(Q);
  if (qn > 4294967296.0L) throw ResourceError("degree", "Dirichlet search bound Q^n exceeds 2^32");
  const std::uint64_t limit = static_cast<std::uint64_t>(qn);
  std::vector<long double> alpha(n);
  const long double lr = log_rat(rho);
  for (std::size_t i = 0; i < n; ++i) alpha[i] = 2 * lr / log_int(x[i]);
  const long double tol = 1.0L / static_cast<long double>(Q);
  for (std::uint64_t q = 1; q < limit; ++q) {
    bool ok = true;
    std::vector<int> k(n);
    for (std::size_t i = 0; i < n && ok; ++i) {
      const long double t = static_cast<long double>(q) * alpha[i];
      const long double ki = std::floor(t + 0.5L);
      if (std::fabs(t - ki) > tol) ok = false;
      k[i] = static_cast<int>(ki);
    }
    if (!ok) continue;
    DirichletResult res;
    res.k = k;
    res.q = q;
    res.Q = Q;
    res.r = ipow(x[0], static_cast<unsigned long>(k[0]));
    for (std::size_t i = 1; i < n; ++i) res.r = std::min(res.r, ipow(x[i], static_cast<unsigned long>(k[i])));
    if (dirichlet_postconditions(x, rho, eps, res)) return res;
  }
  throw InvariantError("degree", "Dirichlet scan found no admissible q below Q^n");
}

long double dirichlet_k_bound(std::span<const Int> x, const Rat& rho, const Rat& eps, std::size_t i) {
  const long double n = static_cast<long double>(x.size());
  const Int xmax = *std::max_element(x.begin(), x.end());
  return std::pow(2.0L, 2 * n + 1) * std::pow(log_int(xmax), n) * log_rat(rho) /
         (log_int(x[i]) * std::pow(std::log1p(to_ld(eps)), n));
}

bool dirichlet_postconditions(std::span<const Int> x, const Rat& rho, const Rat& eps, const DirichletResult& res,
                              std::string* why) {
  if (res.k.size() != x.size()) {
    fail(why, "wrong number of exponents");
    return false;
  }
  if (Rat(res.r) < rho) {
    fail(why, "r < rho");
    return false;
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (res.k[i] < 1) {
      fail(why, "k_i < 1");
      return false;
    }
    const Int xi = ipow(x[i], static_cast<unsigned long>(res.k[i]));
    if (xi < res.r || Rat(xi) > (1 + eps) * Rat(res.r)) {
      fail(why, "x_i^k_i outside [r, (1+eps) r]");
      return false;
    }
    if (static_cast<long double>(res.k[i]) > dirichlet_k_bound(x, rho, eps, i)) {
      fail(why, "k_i bound violated");
      return false;
    }
  }
  return true;
}

DegreePlan select_degree(int n, std::span<const Int> x, const Int& rho, const Rat& eps, const Int& d, const Int& C) {
  if (n != static_cast<int>(x.size())) throw InputError("degree", "n does not match the number of primes");
  if (C < 2) throw InputError("degree", "C must be >= 2");
  if (d < 1) throw InputError("degree", "d must be >= 1");
  const Int threshold = 3 * ipow(C, static_cast<unsigned long>(n));
  if (rho < threshold)
    throw InputError("degree", "rho = " + rho.get_str() + " below threshold 3 C^n = " + threshold.get_str());
  DegreePlan P;
  P.n = n;
  P.x.assign(x.begin(), x.end());
  P.rho = rho;
  P.d = d;
  P.C = C;
  P.c = 4 * ipow(C, static_cast<unsigned long>(n + 1));
  const Rat rd = Rat(rho) / Rat(d);
  if (n == 0) {
    P.eps = 0;
    Int r;
    mpz_cdiv_q(r.get_mpz_t(), rho.get_mpz_t(), d.get_mpz_t());
    P.r = r;
  } else if (n == 1) {
    P.eps = 0;
    int k = 0;
    Int xk = 1;
    while (Rat(xk) < rd) {
      xk *= x[0];
      ++k;
    }
    P.k = {k};
    P.r = xk;
  } else {
    if (eps <= 0 || eps >= 1) throw InputError("degree", "eps must lie in (0, 1) for n > 1");
    P.eps = eps;
    const DirichletResult res = dirichlet_approx(x, rd, eps);
    P.k = res.k;
    P.r = res.r;
    P.dirichlet_q = res.q;
  }
  P.degree = P.d * P.r;
  std::string why;
  if (!check_plan(P, &why)) throw InvariantError("degree", "plan invariant violated: " + why);
  return P;
}

bool check_plan(const DegreePlan& P, std::string* why) {
  if (P.C < 2) {
    fail(why, "C < 2");
    return false;
  }
  if (P.c != 4 * ipow(P.C, static_cast<unsigned long>(P.n + 1))) {
    fail(why, "c != 4 C^{n+1}");
    return false;
  }
  if (P.degree != P.d * P.r) {
    fail(why, "degree != d r");
    return false;
  }
  const Rat rd = Rat(P.rho) / Rat(P.d);
  if (Rat(P.r) < rd) {
    fail(why, "r < rho / d");
    return false;
  }
  if (P.degree < P.rho) {
    fail(why, "d r < rho");
    return false;
  }
  for (int i = 0; i < P.n; ++i) {
    const Int xi = ipow(P.x[static_cast<std::size_t>(i)], static_cast<unsigned long>(P.k[static_cast<std::size_t>(i)]));
    if (xi < P.r || Rat(xi) > (1 + P.eps) * Rat(P.r)) {
      fail(why, "x_i^k_i outside [r, (1+eps) r]");
      return false;
    }
  }
  const long double lrd = log_rat(rd), lr = log_int(P.r);
  if (P.n == 1) {
    if (P.degree > P.C * P.rho) {
      fail(why, "d r > C rho");
      return false;
    }
    if (lr > lrd + log_int(P.x[0]) * (1 + 1e-15L)) {
      fail(why, "log r > log(rho/d) + log x_1");
      return false;
    }
  } else if (P.n > 1) {
    const long double n = P.n;
    const long double l1e = std::log1p(to_ld(P.eps));
    const long double lc = log_int(P.C);
    const long double expo = std::pow(4 * lc, n + 1) / std::pow(l1e, n);
    if (log_int(P.degree) > expo * log_int(P.rho)) {
      fail(why, "d r above the degree window");
      return false;
    }
    if (lr > expo * lrd) {
      fail(why, "log r above (4 log C)^{n+1} log(rho/d) / log^n(1+eps)");
      return false;
    }
    const long double kb = std::pow(2.0L, 2 * (n + 1)) * std::pow(lc, n) * lrd / std::pow(l1e, n);
    for (int k : P.k)
      if (static_cast<long double>(k) > kb) {
        fail(why, "k_i above 2^{2(n+1)} log^n C log(rho/d) / log^n(1+eps)");
        return false;
      }
  }
  return true;
}

}  // namespace tpadic
