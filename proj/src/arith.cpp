#include "tpadic/arith.hpp"

#include <cctype>
#include <utility>

#include "tpadic/error.hpp"

namespace tpadic {

Int ipow(const Int& base, unsigned long exp) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

int vp(const Int& x, const Int& p) {
  if (sgn(x) == 0) return kInfiniteValuation;
  if (p == 2) return static_cast<int>(mpz_scan1(x.get_mpz_t(), 0));
  Int t;
  return static_cast<int>(mpz_remove(t.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t()));
}

Int mod_floor(const Int& a, const Int& m) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  if (sgn(r) < 0) r += abs(m);
  return r;
}

Int round_div(const Int& a, const Int& b) {
  Int num = 2 * a + b;
  Int den = 2 * b;
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return q;
}

Int round_rat(const Rat& x) { return round_div(x.get_num(), x.get_den()); }

Int inv_mod(const Int& a, const Int& m) {
  Int r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
    throw InvariantError("arith", "element not invertible modulo " + m.get_str());
  return mod_floor(r, m);
}

long bit_length(const Int& x) {
  if (sgn(x) == 0) return 0;
  return static_cast<long>(mpz_sizeinbase(x.get_mpz_t(), 2));
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  Int x(std::to_string(n));
  return mpz_probab_prime_p(x.get_mpz_t(), 40) != 0;
}

std::uint64_t next_prime(std::uint64_t n) {
  std::uint64_t c = n + 1;
  while (!is_prime(c)) ++c;
  return c;
}

Int det(IntMatrix a) {
  // Bareiss elimination.
  const std::size_t n = a.size();
  if (n == 0) return 1;
  int sign = 1;
  Int prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t piv = k + 1;
      while (piv < n && a[piv][k] == 0) ++piv;
      if (piv == n) return 0;
      std::swap(a[k], a[piv]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Int t = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

Rat det(RatMatrix a) {
  const std::size_t n = a.size();
  Rat d = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && a[piv][k] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != k) {
      std::swap(a[k], a[piv]);
      d = -d;
    }
    d *= a[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a[i][k] == 0) continue;
      Rat f = a[i][k] / a[k][k];
      for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
    }
  }
  return d;
}

Rat parse_rational(const std::string& raw) {
  std::string s;
  for (char ch : raw)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw InputError("arith", "empty number");
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    Rat r(parse_rational(s.substr(0, slash)) / parse_rational(s.substr(slash + 1)));
    r.canonicalize();
    return r;
  }
  long exp10 = 0;
  auto epos = s.find_first_of("eE");
  if (epos != std::string::npos) {
    try {
      exp10 = std::stol(s.substr(epos + 1));
    } catch (const std::exception&) {
      throw InputError("arith", "bad exponent in '" + raw + "'");
    }
    s = s.substr(0, epos);
  }
  bool neg = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    neg = s[0] == '-';
    s = s.substr(1);
  }
  std::string digits;
  long frac = 0;
  bool seen_point = false;
  for (char ch : s) {
    if (ch == '.') {
      if (seen_point) throw InputError("arith", "bad number '" + raw + "'");
      seen_point = true;
    } else if (std::isdigit(static_cast<unsigned char>(ch))) {
      digits += ch;
      if (seen_point) ++frac;
    } else {
      throw InputError("arith", "bad number '" + raw + "'");
    }
  }
  if (digits.empty()) throw InputError("arith", "bad number '" + raw + "'");
  Rat r{Int(digits, 10)};
  long shift = exp10 - frac;
  if (shift >= 0)
    r *= ipow(10, static_cast<unsigned long>(shift));
  else
    r /= ipow(10, static_cast<unsigned long>(-shift));
  r.canonicalize();
  return neg ? Rat(-r) : r;
}

std::string to_string(const Int& x) { return x.get_str(); }

}  // namespace tpadic
