#pragma once

#include <cstdint>
#include <vector>

#include "tpadic/arith.hpp"
#include "tpadic/gf.hpp"
#include "tpadic/zpoly.hpp"

namespace tpadic {

// Element of O_E. Coordinate c[j*f + i] is the Z_p-coefficient of t^i pi^j,
// where t generates the unramified step and pi is the Eisenstein root. The
// element is known modulo P^prec and coordinates are kept reduced so that two
// elements with equal prec are congruent iff their coordinates agree.
struct LocalElem {
  std::vector<Int> c;
  int prec = 0;
};

// Subfields F of E that the tower description makes visible.
enum class SubField { Qp, Unramified, Whole };

class LocalField {
 public:
  // unramified: monic integer lift of an irreducible polynomial mod p, or
  // empty / degree 1 for the trivial step. eisenstein: monic Eisenstein
  // polynomial over Z, or empty / degree 1 for the trivial step.
  LocalField(const Int& p, ZPoly unramified, ZPoly eisenstein, int N);

  const Int& p() const { return p_; }
  int e() const { return e_; }
  int f() const { return f_; }
  int degree() const { return e_ * f_; }
  int precision() const { return N_; }  // every exact input is known to at least this
  int capacity() const { return cap_; }  // prec of exact elements
  const GF& residue_field() const { return F_; }
  std::uint64_t q() const { return F_.size(); }
  const ZPoly& unramified_poly() const { return U_; }
  const ZPoly& eisenstein_poly() const { return eis_; }

  // e(F/Q_p), f(F/Q_p) of a visible subfield.
  int sub_e(SubField F) const { return F == SubField::Whole ? e_ : 1; }
  int sub_f(SubField F) const { return F == SubField::Qp ? 1 : f_; }

  LocalElem zero() const;
  LocalElem one() const;
  LocalElem from_int(const Int& x) const;
  LocalElem from_coords(std::vector<Int> c, int prec) const;
  LocalElem uniformizer() const;
  LocalElem unramified_generator() const;  // t

  LocalElem add(const LocalElem& x, const LocalElem& y) const;
  LocalElem sub(const LocalElem& x, const LocalElem& y) const;
  LocalElem neg(const LocalElem& x) const;
  LocalElem mul(const LocalElem& x, const LocalElem& y) const;
  LocalElem mul_int(const Int& s, const LocalElem& x) const;
  LocalElem pow(const LocalElem& x, const Int& n) const;
  LocalElem pi_power(int w) const;

  // Capped at x.prec; the value x.prec means "precision-zero".
  int valuation(const LocalElem& x) const;
  bool is_precision_zero(const LocalElem& x) const { return valuation(x) >= x.prec; }
  // v(x - y) >= min(prec) with min(prec) >= at_least.
  bool congruent(const LocalElem& x, const LocalElem& y, int at_least) const;
  LocalElem truncate(const LocalElem& x, int prec) const;

  // x / pi^w; throws if v(x) < w or undecidable. Precision drops by w.
  LocalElem shift_down(const LocalElem& x, int w) const;
  LocalElem shift_up(const LocalElem& x, int w) const { return mul(x, pi_power(w)); }
  LocalElem inverse_unit(const LocalElem& x) const;
  // x / y for v(x) >= v(y), y not precision-zero.
  LocalElem divide(const LocalElem& x, const LocalElem& y) const;

  GF::Elem residue(const LocalElem& x) const;
  // Transversal element sum b_i t^i for a = sum b_i p^i.
  LocalElem lift_residue(GF::Elem a) const;
  LocalElem teichmuller(GF::Elem a) const;

  // First L digits over the transversal; digit t is the coefficient of pi^t.
  std::vector<GF::Elem> digits(const LocalElem& x, int L) const;
  // Position of x mod P^k in residue_enum(k).
  std::uint64_t enum_index(const LocalElem& x, int k) const;
  // The q^k canonical digit lifts of O_E / P^k in enumeration order.
  std::vector<LocalElem> residue_enum(int k) const;
  LocalElem from_enum_index(std::uint64_t n, int k) const;

 private:
  void mul_raw(const std::vector<Int>& a, const std::vector<Int>& b, std::vector<Int>& out, int mod_exp) const;
  void reduce(Int& x, int k) const;
  void normalize(LocalElem& x) const;
  int coord_valuation(const Int& c, std::size_t idx) const;
  std::vector<Int> uinv_power(int k) const;

  Int p_;
  bool p2_;
  int e_, f_, N_, M_, cap_;
  ZPoly U_, eis_;
  GF F_;
  std::vector<Int> ppow_;  // p^0 .. p^{M+1}
  std::vector<Int> uinv_;  // u^{-1} mod p^{M+1}, where pi^e = p u
  std::vector<Int> piu_;   // pi^{e-1} u^{-1} mod p^{M+1}
};

using LocalPoly = std::vector<LocalElem>;  // low to high

LocalPoly to_local_poly(const LocalField& E, const ZPoly& f);
LocalElem poly_eval(const LocalField& E, const LocalPoly& f, const LocalElem& x);
// Coefficients of f(x + X), i.e. f^{(nu)}(x)/nu!.
LocalPoly taylor_coefficients(const LocalField& E, const LocalPoly& f, const LocalElem& x);
// All roots in O_E of a nonzero polynomial with simple roots, by residue
// search and Newton lifting with recursive renormalization.
std::vector<LocalElem> local_roots(const LocalField& E, const LocalPoly& f);

struct HenselResult {
  LocalElem root;
  int iterations = 0;
};

// Lifts x0 to a root x with v(x - x0) > b under the hypotheses
// (1) v(f(x0)) > a + b, (2) v(f'(x0)) <= a, (3) v(f^{(nu)}(x0)/nu!) >= a - (nu-1) b.
// Violations throw PreconditionError with the condition index; undecidable
// comparisons throw PrecisionError.
HenselResult hensel_root(const LocalField& E, const LocalPoly& f, const LocalElem& x0, int a, int b);
// Same, with taylor = taylor_coefficients(E, f, x0) already computed.
HenselResult hensel_root(const LocalField& E, const LocalPoly& f, const LocalPoly& taylor, const LocalElem& x0, int a,
                         int b);

struct Automorphism {
  LocalElem t_image, pi_image;
  int frobenius = 0;               // sigma(t) = t^{p^frobenius} mod P
  std::vector<LocalElem> basis;    // images of t^i pi^j, index j*f + i
};

struct GaloisAction {
  SubField base = SubField::Qp;
  std::vector<Automorphism> auts;  // auts[0] is the identity
  std::vector<std::vector<int>> table;  // index of auts[a] o auts[b]
  int e_rel = 1, f_rel = 1;
  int size() const { return static_cast<int>(auts.size()); }
};

GaloisAction galois_group(const LocalField& E, SubField F);
LocalElem apply_aut(const LocalField& E, const GaloisAction& G, int sigma, const LocalElem& x);
// Indices sigma with sigma(x) = x mod P^k.
std::vector<int> stabilizer(const LocalField& E, const GaloisAction& G, const LocalElem& x, int k);

// x with every coordinate outside F checked to be precision-zero and dropped.
LocalElem f_part(const LocalField& E, SubField F, const LocalElem& x);

}  // namespace tpadic
