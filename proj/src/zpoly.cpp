#include "tpadic/zpoly.hpp"

#include <cctype>
#include <sstream>

#include "tpadic/error.hpp"

namespace tpadic {

int degree(const ZPoly& f) { return static_cast<int>(f.size()) - 1; }

void trim(ZPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

void trim(QPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

ZPoly operator+(const ZPoly& a, const ZPoly& b) {
  ZPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  trim(r);
  return r;
}

ZPoly operator-(const ZPoly& a, const ZPoly& b) {
  ZPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

ZPoly operator*(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

ZPoly derivative(const ZPoly& f) {
  if (f.size() <= 1) return {};
  ZPoly r(f.size() - 1);
  for (std::size_t i = 1; i < f.size(); ++i) r[i - 1] = f[i] * static_cast<unsigned long>(i);
  trim(r);
  return r;
}

Int eval(const ZPoly& f, const Int& x) {
  Int acc = 0;
  for (std::size_t i = f.size(); i-- > 0;) acc = acc * x + f[i];
  return acc;
}

ZPoly taylor_shift(const ZPoly& f, const Int& r) {
  ZPoly c = f;
  const std::size_t n = c.size();
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = n - 1; j-- > i;) c[j] += r * c[j + 1];
  return c;
}

bool is_monic(const ZPoly& f) { return !f.empty() && f.back() == 1; }

bool divide_exact(const ZPoly& f, const ZPoly& monic, ZPoly& quotient) {
  if (!is_monic(monic)) throw InvariantError("zpoly", "divisor not monic");
  ZPoly r = f;
  trim(r);
  const int db = degree(monic);
  if (degree(r) < db) {
    quotient.clear();
    return r.empty();
  }
  quotient.assign(static_cast<std::size_t>(degree(r) - db + 1), Int(0));
  for (int i = degree(r); i >= db; --i) {
    Int c = r[static_cast<std::size_t>(i)];
    quotient[static_cast<std::size_t>(i - db)] = c;
    if (c == 0) continue;
    for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(i - db + j)] -= c * monic[static_cast<std::size_t>(j)];
  }
  trim(r);
  return r.empty();
}

QPoly to_qpoly(const ZPoly& f) {
  QPoly r(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) r[i] = Rat(f[i]);
  return r;
}

namespace {

QPoly qrem(QPoly a, const QPoly& b) {
  trim(a);
  const int db = static_cast<int>(b.size()) - 1;
  while (static_cast<int>(a.size()) - 1 >= db && !a.empty()) {
    const int da = static_cast<int>(a.size()) - 1;
    Rat f = a.back() / b.back();
    for (int j = 0; j <= db; ++j) a[static_cast<std::size_t>(da - db + j)] -= f * b[static_cast<std::size_t>(j)];
    a.pop_back();
    trim(a);
  }
  return a;
}

}  // namespace

QPoly qgcd(QPoly a, QPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    QPoly r = qrem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    Rat lc = a.back();
    for (auto& c : a) c /= lc;
  }
  return a;
}

bool is_squarefree(const ZPoly& f) {
  if (degree(f) <= 0) return true;
  // Cheap modular certificate first: a prime not dividing the leading
  // coefficient with gcd(f, f') = 1 mod p proves squarefreeness over Q.
  static const unsigned long kPrimes[] = {1000003UL, 1000033UL, 1000037UL, 1000039UL};
  for (unsigned long p : kPrimes) {
    Int P(p);
    if (f.back() % P == 0) continue;
    std::vector<unsigned long> a, b;
    for (const auto& c : f) a.push_back(mod_floor(c, P).get_ui());
    ZPoly d = derivative(f);
    for (const auto& c : d) b.push_back(mod_floor(c, P).get_ui());
    auto trimv = [](std::vector<unsigned long>& v) {
      while (!v.empty() && v.back() == 0) v.pop_back();
    };
    trimv(a);
    trimv(b);
    auto inv = [p](unsigned long x) { return inv_mod(Int(x), Int(p)).get_ui(); };
    while (!b.empty()) {
      while (a.size() >= b.size() && !a.empty()) {
        unsigned long f0 = static_cast<unsigned long>(
            (static_cast<unsigned __int128>(a.back()) * inv(b.back())) % p);
        std::size_t off = a.size() - b.size();
        for (std::size_t j = 0; j < b.size(); ++j) {
          unsigned long t = static_cast<unsigned long>((static_cast<unsigned __int128>(f0) * b[j]) % p);
          a[off + j] = (a[off + j] + p - t) % p;
        }
        trimv(a);
      }
      std::swap(a, b);
    }
    if (a.size() == 1) return true;
  }
  QPoly g = qgcd(to_qpoly(f), to_qpoly(derivative(f)));
  return g.size() <= 1;
}

Int discriminant(const ZPoly& f) {
  const int n = degree(f);
  if (n <= 0) throw InputError("zpoly", "discriminant of a constant");
  if (n == 1) return 1;
  ZPoly d = derivative(f);
  const int m = n - 1;
  const int size = n + m;
  IntMatrix s(static_cast<std::size_t>(size), std::vector<Int>(static_cast<std::size_t>(size), Int(0)));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= n; ++j) s[i][i + j] = f[static_cast<std::size_t>(n - j)];
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= m; ++j) s[m + i][i + j] = d[static_cast<std::size_t>(m - j)];
  Int res = det(s);
  Int lc = f.back();
  Int out;
  mpz_divexact(out.get_mpz_t(), res.get_mpz_t(), lc.get_mpz_t());
  if ((static_cast<long>(n) * (n - 1) / 2) % 2 == 1) out = -out;
  return out;
}

ZPoly parse_poly(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw InputError("zpoly", "empty polynomial");
  ZPoly r;
  std::size_t i = 0;
  auto fail = [&](const std::string& why) { throw InputError("zpoly", why + " in '" + text + "'"); };
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (i != 0) {
      fail("expected + or -");
    }
    std::string num;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) num += s[i++];
    if (i < s.size() && s[i] == '*') {
      if (num.empty()) fail("dangling '*'");
      ++i;
    }
    unsigned long exp = 0;
    if (i < s.size() && (s[i] == 'x' || s[i] == 'X')) {
      ++i;
      exp = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        std::string e;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) e += s[i++];
        if (e.empty()) fail("missing exponent");
        exp = std::stoul(e);
      }
    } else if (num.empty()) {
      fail("expected a term");
    }
    Int c = num.empty() ? Int(1) : Int(num);
    if (r.size() <= exp) r.resize(exp + 1);
    r[exp] += sign * c;
  }
  trim(r);
  return r;
}

std::string format_poly(const ZPoly& f) {
  if (f.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = f.size(); i-- > 0;) {
    const Int& c = f[i];
    if (c == 0) continue;
    Int a = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0) {
      os << a.get_str();
      continue;
    }
    if (a != 1) os << a.get_str() << "*";
    os << "x";
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

}  // namespace tpadic
