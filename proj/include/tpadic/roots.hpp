#pragma once

#include <functional>
#include <span>
#include <vector>

#include "tpadic/mpreal.hpp"
#include "tpadic/zpoly.hpp"

namespace tpadic {

// Kernel selection. Both variants produce bit-identical results; the serial
// one is the reference used in tests.
enum class Exec { serial, parallel };

// Complex roots of a monic polynomial with Weierstrass inclusion radii.
// Disks D(roots[i], radii[i]) are pairwise disjoint and each holds exactly one
// root of the exact polynomial (whose coefficients lie within coeff_err of the
// given ones).
struct RootIsolation {
  std::vector<Complex> roots;
  std::vector<Real> radii;
  int iterations = 0;
  mpfr_prec_t precision = 0;
};

namespace kernels {

// One Jacobi-style Aberth sweep: corrections w[i] computed from z only.
void aberth_corrections(std::span<const Complex> coeffs, std::span<const Complex> z, std::span<Complex> w,
                        Exec exec);

// Residual-based inclusion radii for monic coeffs at points z.
void inclusion_radii(std::span<const Complex> coeffs, std::span<const Real> coeff_err, std::span<const Complex> z,
                     std::span<Real> radii, Exec exec);

}  // namespace kernels

// Throws PrecisionError when the disks cannot be separated at this precision.
RootIsolation isolate_roots(std::span<const Complex> coeffs, std::span<const Real> coeff_err, mpfr_prec_t prec,
                            Exec exec = Exec::parallel);

// Roots of an exact monic integer polynomial, raising precision until isolated.
RootIsolation isolate_roots(const ZPoly& f, mpfr_prec_t min_prec = 128, Exec exec = Exec::parallel);

struct MahlerValue {
  long double log_mahler = 0;  // log M(f) for monic f
  long double error = 0;       // certified bound on |computed - true|
  mpfr_prec_t precision = 0;
};

// Coefficient provider: given a working precision fill monic coefficients and
// per-coefficient absolute error bounds.
using CoeffProvider = std::function<void(mpfr_prec_t, std::vector<Complex>&, std::vector<Real>&)>;

// log M(f) to absolute error <= tol, doubling precision as needed.
MahlerValue log_mahler(const CoeffProvider& provider, mpfr_prec_t start_prec, long double tol,
                       Exec exec = Exec::parallel);
MahlerValue log_mahler(const ZPoly& f, long double tol = 1e-12L, Exec exec = Exec::parallel);

}  // namespace tpadic
