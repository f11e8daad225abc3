#pragma once

#include <string>
#include <vector>

#include "tpadic/arith.hpp"

namespace tpadic {

// Dense integer polynomial, coefficients low to high, no leading zeros.
using ZPoly = std::vector<Int>;
using QPoly = std::vector<Rat>;

int degree(const ZPoly& f);  // -1 for the zero polynomial
void trim(ZPoly& f);
void trim(QPoly& f);

ZPoly operator+(const ZPoly& a, const ZPoly& b);
ZPoly operator-(const ZPoly& a, const ZPoly& b);
ZPoly operator*(const ZPoly& a, const ZPoly& b);
ZPoly derivative(const ZPoly& f);
Int eval(const ZPoly& f, const Int& x);
ZPoly taylor_shift(const ZPoly& f, const Int& r);  // f(X + r)
bool is_monic(const ZPoly& f);

// Exact division by a monic divisor; false if the remainder is nonzero.
bool divide_exact(const ZPoly& f, const ZPoly& monic, ZPoly& quotient);

QPoly to_qpoly(const ZPoly& f);
QPoly qgcd(QPoly a, QPoly b);  // monic gcd over Q
bool is_squarefree(const ZPoly& f);

// Discriminant of a monic polynomial (sign convention (-1)^{n(n-1)/2} Res(f, f')).
Int discriminant(const ZPoly& f);

// Accepts forms like "x^3 - 2*x + 5", "X^2+1", "-x", "3"; variable x or X.
ZPoly parse_poly(const std::string& text);
std::string format_poly(const ZPoly& f);

}  // namespace tpadic
