#pragma once

// Reference computations used by the tests. Nothing here calls the library's
// own algorithms for the quantity being checked.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include <Eigen/Eigenvalues>

#include "tpadic/arith.hpp"
#include "tpadic/degree.hpp"
#include "tpadic/numfield.hpp"
#include "tpadic/zpoly.hpp"

namespace oracle {

using tpadic::Int;
using tpadic::ZPoly;

inline Int eval_mod(const ZPoly& f, const Int& x, const Int& m) {
  Int acc = 0;
  for (auto it = f.rbegin(); it != f.rend(); ++it) acc = (acc * x + *it) % m;
  if (acc < 0) acc += m;
  return acc;
}

inline int vp_int(Int x, const Int& p) {
  if (x == 0) return 1 << 20;
  int v = 0;
  while (x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

// Every x in [0, p^N) with f(x) = 0 mod p^N, by extending solutions one
// digit at a time.
inline std::vector<Int> residue_solutions(const ZPoly& f, const Int& p, int N) {
  std::vector<Int> cur{0};
  Int mod = 1;
  for (int j = 1; j <= N; ++j) {
    const Int next_mod = mod * p;
    std::vector<Int> next;
    for (const auto& x : cur)
      for (Int d = 0; d < p; ++d) {
        const Int y = x + d * mod;
        if (eval_mod(f, y, next_mod) == 0) next.push_back(y);
      }
    cur = std::move(next);
    mod = next_mod;
  }
  return cur;
}

inline ZPoly derivative(const ZPoly& f) {
  ZPoly d;
  for (std::size_t i = 1; i < f.size(); ++i) d.push_back(f[i] * static_cast<long>(i));
  return d;
}

// log M(f) from companion-matrix eigenvalues in double precision.
inline double log_mahler_eigen(const ZPoly& f) {
  const int n = static_cast<int>(f.size()) - 1;
  if (n <= 0) return 0.0;
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) C(i, i - 1) = 1.0;
  const double lead = f.back().get_d();
  for (int i = 0; i < n; ++i) C(i, n - 1) = -f[static_cast<std::size_t>(i)].get_d() / lead;
  Eigen::EigenSolver<Eigen::MatrixXd> es(C, false);
  double s = std::log(std::abs(lead));
  for (int i = 0; i < n; ++i) s += std::max(0.0, std::log(std::abs(es.eigenvalues()[i])));
  return s;
}

inline std::mt19937_64& rng() {
  static std::mt19937_64 g(20240601);
  return g;
}

inline long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng()); }

// Exact test of |sigma(r)| <= delta_K N(a)^{1/m} for m <= 2 and power bases,
// with K = Q(sqrt D). delta_K^2 N(a)^{2/m} = 32 |Disc| N(a) when m = 2.
inline bool small_rep_bound_holds(const tpadic::NumberField& K, const tpadic::AlgebraicInt& r, const Int& norm) {
  if (K.degree() == 1) return abs(r.coords[0]) <= norm;
  const Int D = -K.min_poly()[0];
  const Int u = r.coords[0], v = r.coords[1];
  const Int B2 = 32 * abs(K.discriminant()) * norm;
  if (D < 0) return u * u - D * v * v <= B2;
  // (|u| + |v| sqrt D)^2 <= B2.
  const Int rest = B2 - u * u - D * v * v;
  if (rest < 0) return false;
  return 4 * D * u * u * v * v <= rest * rest;
}

// Postconditions checked with exact integer arithmetic and the k bound in
// long double with a relative margin of 1e-12.
inline bool dirichlet_holds(const std::vector<Int>& x, const tpadic::Rat& rho, const tpadic::Rat& eps,
                            const tpadic::DirichletResult& res) {
  if (tpadic::Rat(res.r) < rho) return false;
  long double lmax = 0;
  for (const auto& xi : x) lmax = std::max(lmax, std::log(static_cast<long double>(xi.get_d())));
  const long double l1e = std::log1p(static_cast<long double>(eps.get_d()));
  const long double lrho = std::log(static_cast<long double>(rho.get_d()));
  const int n = static_cast<int>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const Int xk = tpadic::ipow(x[i], static_cast<unsigned long>(res.k[i]));
    if (xk < res.r || tpadic::Rat(xk) > (1 + eps) * tpadic::Rat(res.r)) return false;
    const long double bound = std::ldexp(1.0L, 2 * n + 1) * std::pow(lmax, n) * lrho /
                              (std::log(static_cast<long double>(x[i].get_d())) * std::pow(l1e, n));
    if (res.k[i] > bound * (1 + 1e-12L)) return false;
  }
  return true;
}

}  // namespace oracle
