#include "tpadic/mpreal.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace tpadic {

double Real::log2abs() const {
  if (mpfr_zero_p(v_)) return -std::numeric_limits<double>::infinity();
  long e = 0;
  double m = mpfr_get_d_2exp(&e, v_, MPFR_RNDN);
  return std::log2(std::fabs(m)) + static_cast<double>(e);
}

std::string Real::str(int digits) const {
  std::vector<char> buf(static_cast<std::size_t>(digits) + 32);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, v_);
  return std::string(buf.data());
}

Real sqrt(const Real& x) {
  Real r(x.prec());
  mpfr_sqrt(r.get(), x.get(), MPFR_RNDN);
  return r;
}

Real log(const Real& x) {
  Real r(x.prec());
  mpfr_log(r.get(), x.get(), MPFR_RNDN);
  return r;
}

Real abs(const Real& x) {
  Real r(x.prec());
  mpfr_abs(r.get(), x.get(), MPFR_RNDN);
  return r;
}

Real hypot(const Real& a, const Real& b) {
  Real r(std::max(a.prec(), b.prec()));
  mpfr_hypot(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}

Real mul_2si(const Real& x, long e) {
  Real r(x.prec());
  mpfr_mul_2si(r.get(), x.get(), e, MPFR_RNDN);
  return r;
}

Real const_pi(mpfr_prec_t prec) {
  Real r(prec);
  mpfr_const_pi(r.get(), MPFR_RNDN);
  return r;
}

Real max(const Real& a, const Real& b) { return a < b ? b : a; }

Real cos(const Real& x) {
  Real r(x.prec());
  mpfr_cos(r.get(), x.get(), MPFR_RNDN);
  return r;
}

Real sin(const Real& x) {
  Real r(x.prec());
  mpfr_sin(r.get(), x.get(), MPFR_RNDN);
  return r;
}

Complex& Complex::operator*=(const Complex& o) {
  Real a = re * o.re - im * o.im;
  Real b = re * o.im + im * o.re;
  re = std::move(a);
  im = std::move(b);
  return *this;
}

Complex& Complex::operator/=(const Complex& o) {
  Real d = o.re * o.re + o.im * o.im;
  Real a = (re * o.re + im * o.im) / d;
  Real b = (im * o.re - re * o.im) / d;
  re = std::move(a);
  im = std::move(b);
  return *this;
}

Real abs(const Complex& z) { return hypot(z.re, z.im); }

Real norm(const Complex& z) { return z.re * z.re + z.im * z.im; }

Complex conj(const Complex& z) { return Complex(z.re, -z.im); }

Complex scale(const Complex& z, const Real& s) { return Complex(z.re * s, z.im * s); }

}  // namespace tpadic
