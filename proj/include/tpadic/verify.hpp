#pragma once

#include <climits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tpadic/construct.hpp"
#include "tpadic/roots.hpp"

namespace tpadic {

struct RootCertificate {
  std::size_t index = 0;  // position in the x0 list
  int a = 0;              // v(g'(x0))
  int v_g = 0;            // v(g(x0)), capped at its precision
  int slack3 = INT_MAX;   // min over nu >= 2 of v(g^(nu)(x0)/nu!) - (a - (nu-1) b)
  bool cond1 = false, cond3 = false, lifted = false;
  bool decided = true;  // false: a comparison hit precision-zero
  std::string failure;
};

struct SplittingCertificate {
  std::size_t prime_index = 0;
  int b = 0;
  int precision = 0;
  int a_max = 0;
  int separation = 0;         // max v(x0 - y0) over distinct x0, y0
  int lifted_separation = 0;  // same for the lifted roots
  std::size_t degree = 0;
  std::size_t certified = 0;
  std::vector<RootCertificate> roots;
  std::vector<std::string> failures;
  bool pass() const { return failures.empty() && certified == degree; }
};

namespace kernels {

// Per-x0 Taylor expansion and valuation tests; fills everything except the
// lifting fields.
void splitting_conditions(const LocalField& E, const LocalPoly& g, std::span<const LocalElem> x0s, int b,
                          std::vector<RootCertificate>& out, std::vector<LocalPoly>* taylor, Exec exec);

}  // namespace kernels

// Certifies that g has a distinct root within v(x - x0) > b of every x0.
SplittingCertificate verify_splitting(const LocalField& E, const LocalPoly& g, std::span<const LocalElem> x0s, int b,
                                      Exec exec = Exec::parallel);

// The same for prime i of a construction, with g embedded through iota and
// b = k_i + c - 1; also checks a + b < e_i m_i.
SplittingCertificate verify_splitting(const Construction& C, std::size_t i, const std::vector<AlgebraicInt>& g,
                                      Exec exec = Exec::parallel);

LocalPoly embed_poly(const LocalSetup& L, const std::vector<AlgebraicInt>& g);

struct IrreducibilityCertificate {
  bool congruent = false;  // g = g0 mod p0
  bool irreducible = false;
  std::vector<GF::Elem> witness;  // nontrivial factor when reducible
  bool pass() const { return congruent && irreducible; }
};

IrreducibilityCertificate verify_irreducible(const NumberField& K, const PrimeIdealData& P0,
                                             const std::vector<AlgebraicInt>& g, const std::vector<AlgebraicInt>& g0);

// Conditions (1)-(4) of the global polynomial, checked from scratch.
std::vector<std::string> global_condition_failures(const Construction& C, const std::vector<AlgebraicInt>& g);

struct PrimeTerm {
  Int p;
  int f_p = 1;     // f(p_i | p_i)
  int e = 1;       // e_i = e(E_i/F_i)
  Int x;           // q_i^{f_i}
  int k = 0;
  Int m;
};

struct HeightInputs {
  DegreePlan plan;
  int field_degree = 1;
  long double log_delta = 0;
  Int norm_p0;
  long double log_B = 0;
  std::vector<PrimeTerm> primes;
};

HeightInputs height_inputs(const Construction& C);

struct HeightReport {
  long double log_B = 0;
  long double anchor = 0;      // log(delta_K N(p0)^{1/m} sqrt(deg+1)) / deg
  long double main = 0;        // sum f log p / (m e (x - 1))
  long double eps_term = 0;    // n eps
  long double error_term = 0;  // 13 n C^{2n+2} log(deg) / deg
  long double total = 0;       // main + eps_term + error_term
  long double bo_h = 0;        // log(B sqrt(deg+1)) / deg
  std::vector<std::string> chain_failures;
  bool chain_ok() const { return chain_failures.empty(); }
};

HeightReport height_bound(const HeightInputs& in);

struct ExactHeight {
  long double value = 0;
  long double error = 0;
  std::vector<long double> place_log_mahler;
};

// (1/deg) sum_v (d_v/m) log M(sigma_v g) for g irreducible over K. The check
// M(sigma g) <= B sqrt(deg+1) is applied when log_B is given.
ExactHeight exact_height(const NumberField& K, const std::vector<AlgebraicInt>& g, long double tol = 1e-12L,
                         std::optional<long double> log_B = std::nullopt, Exec exec = Exec::parallel);
ExactHeight exact_height(const ZPoly& g, long double tol = 1e-12L, Exec exec = Exec::parallel);

struct LocalDegrees {
  Int p;
  int e = 1, f = 1;  // absolute, of E_i / Q_p
};

// 1/2 sum log p / (e (p^f + 1)); only for K = Q.
long double lower_bound_value(int field_degree, const std::vector<LocalDegrees>& primes);

}  // namespace tpadic
