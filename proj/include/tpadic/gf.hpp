#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "tpadic/arith.hpp"
#include "tpadic/zpoly.hpp"

namespace tpadic {

// Finite field F_q = F_p[t]/(h) with q = p^f. Elements are encoded as the
// integer sum b_i p^i of their coordinates b_i in the basis t^i, which is also
// the canonical enumeration order of the field.
class GF {
 public:
  using Elem = std::uint64_t;

  // modulus: monic, degree f >= 1, coefficients in [0, p), irreducible mod p.
  GF(std::uint64_t p, std::vector<std::uint64_t> modulus);
  static GF prime_field(std::uint64_t p);

  std::uint64_t p() const { return p_; }
  int degree() const { return f_; }
  std::uint64_t size() const { return q_; }
  const std::vector<std::uint64_t>& modulus() const { return h_; }

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;
  Elem pow(Elem a, const Int& e) const;
  Elem pth_root(Elem a) const;
  Elem generator() const { return gen_; }  // generator of the multiplicative group

  Elem from_digits(const std::vector<std::uint64_t>& d) const;
  std::vector<std::uint64_t> digits(Elem a) const;
  Elem from_int(const Int& x) const;  // image of an integer

 private:
  Elem mul_slow(Elem a, Elem b) const;

  std::uint64_t p_;
  int f_;
  std::uint64_t q_;
  std::vector<std::uint64_t> h_;
  Elem gen_ = 0;
  std::vector<std::uint32_t> exp_, log_;
};

// Polynomials over a GF, coefficients low to high, no leading zeros.
using GFPoly = std::vector<GF::Elem>;

int gf_degree(const GFPoly& a);
void gf_trim(GFPoly& a);
GFPoly gf_add(const GF& F, const GFPoly& a, const GFPoly& b);
GFPoly gf_sub(const GF& F, const GFPoly& a, const GFPoly& b);
GFPoly gf_mul(const GF& F, const GFPoly& a, const GFPoly& b);
void gf_divrem(const GF& F, const GFPoly& a, const GFPoly& b, GFPoly& q, GFPoly& r);
GFPoly gf_rem(const GF& F, const GFPoly& a, const GFPoly& b);
GFPoly gf_gcd(const GF& F, GFPoly a, GFPoly b);  // monic
GFPoly gf_monic(const GF& F, const GFPoly& a);
GFPoly gf_powmod(const GF& F, const GFPoly& a, const Int& e, const GFPoly& mod);
GFPoly gf_derivative(const GF& F, const GFPoly& a);
GF::Elem gf_eval(const GF& F, const GFPoly& a, GF::Elem x);

// Ben-Or test. On failure, witness receives a proper irreducible factor.
bool gf_is_irreducible(const GF& F, const GFPoly& g, GFPoly* witness = nullptr);

// Complete factorization into monic irreducibles with multiplicities, sorted
// by (degree, coefficient vector high to low) for determinism.
std::vector<std::pair<GFPoly, int>> gf_factor(const GF& F, const GFPoly& g);

// Smallest monic irreducible polynomial of degree f over F_p in the order of
// sum c_i p^i over its lower coefficients.
std::vector<std::uint64_t> smallest_irreducible(std::uint64_t p, int f);

GFPoly reduce_mod_p(const ZPoly& f, std::uint64_t p);

}  // namespace tpadic
