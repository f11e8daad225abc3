#pragma once

#include <optional>
#include <span>
#include <vector>

#include "tpadic/arith.hpp"
#include "tpadic/gf.hpp"
#include "tpadic/mpreal.hpp"
#include "tpadic/zpoly.hpp"

namespace tpadic {

// Element of O_K as integer coordinates over the integral basis.
struct AlgebraicInt {
  std::vector<Int> coords;

  friend bool operator==(const AlgebraicInt& a, const AlgebraicInt& b) { return a.coords == b.coords; }
  AlgebraicInt& operator+=(const AlgebraicInt& o);
  AlgebraicInt& operator-=(const AlgebraicInt& o);
  friend AlgebraicInt operator+(AlgebraicInt a, const AlgebraicInt& b) { return a += b; }
  friend AlgebraicInt operator-(AlgebraicInt a, const AlgebraicInt& b) { return a -= b; }
  friend AlgebraicInt operator*(const Int& s, AlgebraicInt a) {
    for (auto& c : a.coords) c *= s;
    return a;
  }
  bool is_zero() const;
};

// Values omega_j(sigma) of the integral basis under the archimedean places,
// real places first, then one embedding per complex-conjugate pair.
struct EmbeddingTable {
  mpfr_prec_t precision = 0;
  std::vector<std::vector<Complex>> values;  // [place][j]
  std::vector<std::vector<Real>> errors;     // absolute error bounds
  std::vector<bool> is_real;
};

class NumberField {
 public:
  // integral_basis rows are rational coordinates over 1, theta, ..., theta^{m-1}.
  static NumberField create(const ZPoly& min_poly, std::optional<RatMatrix> integral_basis = std::nullopt);

  int degree() const { return m_; }
  const ZPoly& min_poly() const { return f_; }
  const Int& discriminant() const { return disc_; }
  const Int& index() const { return index_; }  // [O_K : Z[theta]]
  int real_places() const { return r_; }
  int complex_places() const { return s_; }
  const RatMatrix& basis() const { return basis_; }

  AlgebraicInt zero() const;
  AlgebraicInt one() const;
  AlgebraicInt from_int(const Int& x) const;
  AlgebraicInt theta_power(int k) const;
  // Element sum c_a theta^a; throws if not integral.
  AlgebraicInt from_power_coords(const std::vector<Rat>& c) const;
  std::vector<Rat> to_power_coords(const AlgebraicInt& x) const;

  AlgebraicInt mul(const AlgebraicInt& a, const AlgebraicInt& b) const;
  AlgebraicInt pow(const AlgebraicInt& a, unsigned long e) const;
  Int trace(const AlgebraicInt& a) const;

  // log(delta_K) with delta_K = m^{3/2} 2^{m(m-1)/2} sqrt|Delta_K|.
  long double log_delta() const;
  Real delta(mpfr_prec_t prec) const;

  EmbeddingTable embeddings(mpfr_prec_t prec) const;
  // sigma(x) for each place, with absolute error bounds.
  void embed(const AlgebraicInt& x, const EmbeddingTable& t, std::vector<Complex>& out,
             std::vector<Real>& err) const;

  const std::vector<std::vector<std::vector<Int>>>& mult_table() const { return table_; }

 private:
  int m_ = 0;
  ZPoly f_;
  RatMatrix basis_;      // omega_i in power coordinates
  RatMatrix basis_inv_;  // theta^a in omega coordinates
  Int disc_;
  Int index_;
  int r_ = 0, s_ = 0;
  std::vector<std::vector<std::vector<Int>>> table_;  // omega_i omega_j = sum_k T[i][j][k] omega_k
};

// Full-rank sublattice of O_K in row Hermite normal form over the integral
// basis: upper triangular, positive pivots, entries above reduced mod pivots.
struct IdealHNF {
  IntMatrix basis;
  Int norm;

  friend bool operator==(const IdealHNF& a, const IdealHNF& b) { return a.basis == b.basis; }
};

struct PrimeIdealData {
  Int p;
  AlgebraicInt pi;      // second generator, v_P(pi) = 1
  int e = 0, f = 0;
  Int norm;             // p^f
  ZPoly residue_poly;   // Kummer-Dedekind factor h, monic, coefficients in [0, p)
  IdealHNF ideal;
};

IdealHNF unit_ideal(const NumberField& K);
IdealHNF principal_ideal(const NumberField& K, const AlgebraicInt& x);
// HNF of the module generated by O_K multiples of gens; modulus must be a
// nonzero integer lying in that ideal.
IdealHNF ideal_from_generators(const NumberField& K, std::span<const AlgebraicInt> gens, const Int& modulus);
IdealHNF ideal_mul(const NumberField& K, const IdealHNF& a, const IdealHNF& b);
IdealHNF ideal_pow(const NumberField& K, const IdealHNF& a, unsigned long e);
IdealHNF ideal_product(const NumberField& K, std::span<const std::pair<PrimeIdealData, unsigned long>> factors);
IdealHNF ideal_add(const NumberField& K, const IdealHNF& a, const IdealHNF& b);
bool ideal_contains(const IdealHNF& a, const AlgebraicInt& x);
AlgebraicInt ideal_reduce(const IdealHNF& a, const AlgebraicInt& x);  // canonical representative
bool coprime(const NumberField& K, const IdealHNF& a, const IdealHNF& b);

std::vector<PrimeIdealData> decompose_prime(const NumberField& K, const Int& p);
int valuation(const NumberField& K, const PrimeIdealData& P, const AlgebraicInt& x, int cap = 64);

// Reduction O_K -> O_K/P, identified with F_p[t]/(h) through theta -> t.
class ResidueMap {
 public:
  ResidueMap(const NumberField& K, const PrimeIdealData& P);
  const GF& field() const { return F_; }
  GF::Elem operator()(const AlgebraicInt& x) const;
  AlgebraicInt lift(GF::Elem a) const;  // sum b_l theta^l

 private:
  const NumberField* K_;
  GF F_;
  std::uint64_t p_;
};

// Chinese remaindering for pairwise coprime ideals with precomputed
// idempotents.
class CrtContext {
 public:
  CrtContext(const NumberField& K, std::vector<IdealHNF> ideals);
  AlgebraicInt operator()(std::span<const AlgebraicInt> residues) const;
  const IdealHNF& modulus() const { return product_; }
  const std::vector<AlgebraicInt>& idempotents() const { return idem_; }

 private:
  const NumberField* K_;
  std::vector<IdealHNF> ideals_;
  std::vector<AlgebraicInt> idem_;
  IdealHNF product_;
};

AlgebraicInt crt_reduce(const NumberField& K, std::span<const std::pair<AlgebraicInt, IdealHNF>> residues);

// LLL-reduced basis of an ideal under the Minkowski embedding; reduce() returns
// the Babai nearest-plane representative of x modulo the ideal.
class SmallRepContext {
 public:
  SmallRepContext(const NumberField& K, const IdealHNF& a);
  AlgebraicInt reduce(const AlgebraicInt& x) const;
  // log(delta_K N(a)^{1/m}).
  long double log_bound() const { return log_bound_; }
  const IntMatrix& reduced_coords() const { return coords_; }
  const IntMatrix& reduced_embedded() const { return emb_; }

 private:
  std::vector<Int> embed_scaled(const AlgebraicInt& x) const;
  void check_bound(const AlgebraicInt& r) const;

  const NumberField* K_;
  IdealHNF ideal_;
  EmbeddingTable table_;
  long scale_bits_;
  IntMatrix coords_;  // reduced basis, integral-basis coordinates
  IntMatrix emb_;     // reduced basis, scaled Minkowski coordinates
  RatMatrix gs_;      // Gram-Schmidt vectors of emb_
  std::vector<Rat> gs_norm_;
  long double log_bound_;
};

AlgebraicInt small_rep(const NumberField& K, const AlgebraicInt& x, const IdealHNF& a);

}  // namespace tpadic
