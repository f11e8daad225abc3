#include "tpadic/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "tpadic/error.hpp"
#include "tpadic/verify.hpp"
#include "tpadic/zfactor.hpp"

namespace tpadic {

namespace {

int count_rec(ZPoly f, const Int& p, int depth, int max_depth) {
  if (depth > max_depth) throw PrecisionError("oracle", "root recursion deeper than N/2; increase precision");
  trim(f);
  int w = -1;
  for (const auto& c : f)
    if (c != 0) w = w < 0 ? vp(c, p) : std::min(w, vp(c, p));
  if (w > 0) {
    const Int s = ipow(p, static_cast<unsigned long>(w));
    for (auto& c : f) c /= s;
  }
  if (degree(f) < 1) return 0;
  const ZPoly df = derivative(f);
  int count = 0;
  for (Int r = 0; r < p; ++r) {
    if (mod_floor(eval(f, r), p) != 0) continue;
    if (mod_floor(eval(df, r), p) != 0) {
      ++count;
      continue;
    }
    ZPoly g = taylor_shift(f, r);
    Int s = 1;
    for (auto& c : g) {
      c *= s;
      s *= p;
    }
    count += count_rec(std::move(g), p, depth + 1, max_depth);
  }
  return count;
}

bool has_root_mod(const ZPoly& f, const Int& p) {
  for (Int r = 0; r < p; ++r)
    if (mod_floor(eval(f, r), p) == 0) return true;
  return false;
}

}  // namespace

int count_padic_roots(const ZPoly& f, const Int& p, int N) {
  if (degree(f) < 1) throw InputError("oracle", "polynomial of degree < 1");
  if (p < 2 || !is_prime(p.get_ui())) throw InputError("oracle", "p is not prime");
  if (!is_squarefree(f)) throw InputError("oracle", "polynomial is not squarefree");
  return count_rec(f, p, 0, N / 2);
}

bool splits_completely(const ZPoly& f, const Int& p) {
  const int n = degree(f);
  if (n <= 1) return n == 1;
  int N = 2 * vp(discriminant(f), p) + 8;
  for (int attempt = 0;; ++attempt) {
    try {
      return count_padic_roots(f, p, N) == n;
    } catch (const PrecisionError&) {
      if (attempt == 3) throw;
      N *= 2;
    }
  }
}

SearchRecord search_small_height(const std::vector<Int>& primes, int deg_max, long H, SearchOptions opt) {
  if (deg_max < 1) throw InputError("oracle", "deg_max must be >= 1");
  if (H < 0) throw InputError("oracle", "coefficient bound must be >= 0");
  for (const auto& p : primes)
    if (p < 2 || !is_prime(p.get_ui())) throw InputError("oracle", "p = " + p.get_str() + " is not prime");
  SearchRecord rec;
  rec.primes = primes;
  rec.deg_max = deg_max;
  rec.coeff_bound = H;
  const std::uint64_t base = static_cast<std::uint64_t>(2 * H + 1);
  bool first = true;
  for (int d = 1; d <= deg_max; ++d) {
    const long double space = std::pow(static_cast<long double>(base), d);
    if (space > opt.budget) {
      rec.partial = true;
      rec.skipped_degrees.push_back(d);
      continue;
    }
    const std::uint64_t total = static_cast<std::uint64_t>(space);
    const std::uint64_t chunk = 1024;
    const long chunks = static_cast<long>((total + chunk - 1) / chunk);
    std::vector<std::vector<SearchEntry>> found(static_cast<std::size_t>(chunks));
    std::vector<std::string> errors(static_cast<std::size_t>(chunks));
    auto body = [&](long ci) {
      try {
        const std::uint64_t lo = static_cast<std::uint64_t>(ci) * chunk, hi = std::min(total, lo + chunk);
        for (std::uint64_t idx = lo; idx < hi; ++idx) {
          // Lexicographic in (c_0, ..., c_{d-1}) with c_0 most significant.
          ZPoly f(static_cast<std::size_t>(d + 1));
          std::uint64_t t = idx;
          for (int j = d - 1; j >= 0; --j) {
            f[static_cast<std::size_t>(j)] = static_cast<long>(t % base) - H;
            t /= base;
          }
          f[static_cast<std::size_t>(d)] = 1;
          bool ok = true;
          for (const auto& p : primes)
            if (!has_root_mod(f, p)) {
              ok = false;
              break;
            }
          if (!ok || !is_squarefree(f)) continue;
          for (const auto& p : primes)
            if (!splits_completely(f, p)) {
              ok = false;
              break;
            }
          if (!ok) continue;
          SearchEntry e;
          e.poly = f;
          bool have = false;
          for (const auto& h : factor_monic(f)) {
            const ExactHeight eh = exact_height(h, 1e-12L, Exec::serial);
            if (!have || eh.value < e.min_root_height) e.min_root_height = eh.value;
            e.max_error = std::max(e.max_error, eh.error);
            have = true;
          }
          found[static_cast<std::size_t>(ci)].push_back(std::move(e));
        }
      } catch (const std::exception& ex) {
        errors[static_cast<std::size_t>(ci)] = ex.what();
      }
    };
    if (opt.exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 1)
      for (long ci = 0; ci < chunks; ++ci) body(ci);
    } else {
      for (long ci = 0; ci < chunks; ++ci) body(ci);
    }
    for (const auto& e : errors)
      if (!e.empty()) throw InvariantError("oracle", "search worker failed: " + e);
    rec.examined += total;
    for (auto& v : found)
      for (auto& e : v) rec.survivors.push_back(std::move(e));
  }
  for (const auto& e : rec.survivors) {
    if (first || e.min_root_height < rec.min_height) rec.min_height = e.min_root_height;
    first = false;
    for (const auto& h : factor_monic(e.poly)) {
      const long double v = exact_height(h, 1e-12L, Exec::serial).value;
      if (v > 1e-9L && (!rec.has_nonzero || v < rec.min_nonzero_height)) {
        rec.min_nonzero_height = v;
        rec.has_nonzero = true;
      }
    }
  }
  return rec;
}

}  // namespace tpadic
