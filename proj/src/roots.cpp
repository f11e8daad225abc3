#include "tpadic/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "tpadic/error.hpp"

namespace tpadic {

namespace {

// Horner evaluation of p and p' at z.
void horner2(std::span<const Complex> c, const Complex& z, Complex& p, Complex& dp) {
  const mpfr_prec_t prec = z.prec();
  p = Complex(prec);
  dp = Complex(prec);
  for (std::size_t k = c.size(); k-- > 0;) {
    dp = dp * z + p;
    p = p * z + c[k];
  }
}

// Bini's starting points from the upper convex hull of (k, log2|a_k|).
std::vector<Complex> initial_points(std::span<const Complex> c, mpfr_prec_t prec) {
  const int n = static_cast<int>(c.size()) - 1;
  std::vector<std::pair<int, double>> pts;
  for (int k = 0; k <= n; ++k) {
    double l = abs(c[static_cast<std::size_t>(k)]).log2abs();
    if (std::isfinite(l)) pts.emplace_back(k, l);
  }
  std::vector<std::pair<int, double>> hull;
  for (const auto& pt : pts) {
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull.back();
      double cross = (b.first - a.first) * (pt.second - a.second) - (b.second - a.second) * (pt.first - a.first);
      if (cross >= 0)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(pt);
  }
  std::vector<Complex> z;
  const double two_pi = 6.283185307179586;
  const int first = pts.front().first;
  // Roots at zero (a_0 = ... = a_{first-1} = 0): start them near the origin.
  for (int t = 0; t < first; ++t) {
    double ang = two_pi * t / std::max(first, 1) + 0.4;
    z.emplace_back(Real(std::ldexp(std::cos(ang), -20), prec), Real(std::ldexp(std::sin(ang), -20), prec));
  }
  for (std::size_t e = 0; e + 1 < hull.size(); ++e) {
    const int i = hull[e].first, j = hull[e + 1].first;
    const int cnt = j - i;
    const double log2u = (hull[e].second - hull[e + 1].second) / cnt;
    for (int t = 0; t < cnt; ++t) {
      double ang = two_pi * t / cnt + two_pi * i / n + 0.7;
      Real u(1.0L, prec);
      mpfr_set_d(u.get(), std::exp2(log2u - std::floor(log2u)), MPFR_RNDN);
      u = mul_2si(u, static_cast<long>(std::floor(log2u)));
      z.emplace_back(u * Real(std::cos(ang), prec), u * Real(std::sin(ang), prec));
    }
  }
  return z;
}

Complex with_prec(const Complex& a, mpfr_prec_t prec) {
  Complex r(prec);
  mpfr_set(r.re.get(), a.re.get(), MPFR_RNDN);
  mpfr_set(r.im.get(), a.im.get(), MPFR_RNDN);
  return r;
}

RootIsolation isolate_impl(std::span<const Complex> coeffs, std::span<const Real> coeff_err, mpfr_prec_t prec,
                           Exec exec, const std::vector<Complex>* guess) {
  const std::size_t n = coeffs.size() - 1;
  RootIsolation out;
  out.precision = prec;
  if (n == 0) return out;
  std::vector<Complex> c(coeffs.size(), Complex(prec));
  for (std::size_t k = 0; k < coeffs.size(); ++k) c[k] = with_prec(coeffs[k], prec);

  std::vector<Complex> z;
  if (guess && guess->size() == n) {
    for (const auto& g : *guess) z.push_back(with_prec(g, prec));
  } else {
    z = initial_points(c, prec);
  }
  std::vector<Complex> w(n, Complex(prec));
  const double target = -static_cast<double>(prec) * 0.85;
  double best = std::numeric_limits<double>::infinity();
  int stall = 0;
  int it = 0;
  const int max_it = 400 + 4 * static_cast<int>(n);
  for (; it < max_it; ++it) {
    kernels::aberth_corrections(c, z, w, exec);
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      z[i] -= w[i];
      double lz = std::max(0.0, abs(z[i]).log2abs());
      worst = std::max(worst, abs(w[i]).log2abs() - lz);
    }
    if (worst < target) break;
    if (worst < best - 1.0) {
      best = worst;
      stall = 0;
    } else if (worst < -static_cast<double>(prec) * 0.5 && ++stall > 4) {
      break;
    }
  }
  out.iterations = it;
  std::vector<Real> radii(n, Real(prec));
  kernels::inclusion_radii(c, coeff_err, z, radii, exec);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      Real dist = abs(z[i] - z[j]);
      if (!(dist > radii[i] + radii[j])) throw PrecisionError("roots", "inclusion disks overlap");
    }
  }
  out.roots = std::move(z);
  out.radii = std::move(radii);
  return out;
}

}  // namespace

namespace kernels {

void aberth_corrections(std::span<const Complex> coeffs, std::span<const Complex> z, std::span<Complex> w,
                        Exec exec) {
  const long n = static_cast<long>(z.size());
  auto body = [&](long i) {
    const mpfr_prec_t prec = z[static_cast<std::size_t>(i)].prec();
    Complex p(prec), dp(prec);
    horner2(coeffs, z[static_cast<std::size_t>(i)], p, dp);
    if (p.re.is_zero() && p.im.is_zero()) {
      w[static_cast<std::size_t>(i)] = Complex(prec);
      return;
    }
    Complex s(prec);
    for (long j = 0; j < n; ++j) {
      if (j == i) continue;
      Complex d = z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(j)];
      Complex one(prec);
      mpfr_set_ui(one.re.get(), 1, MPFR_RNDN);
      s += one / d;
    }
    if (dp.re.is_zero() && dp.im.is_zero()) {
      Complex bump(prec);
      mpfr_set_d(bump.re.get(), 1e-3, MPFR_RNDN);
      w[static_cast<std::size_t>(i)] = bump;
      return;
    }
    Complex ratio = p / dp;
    Complex one(prec);
    mpfr_set_ui(one.re.get(), 1, MPFR_RNDN);
    w[static_cast<std::size_t>(i)] = ratio / (one - ratio * s);
  };
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 4)
    for (long i = 0; i < n; ++i) body(i);
  } else {
    for (long i = 0; i < n; ++i) body(i);
  }
}

void inclusion_radii(std::span<const Complex> coeffs, std::span<const Real> coeff_err, std::span<const Complex> z,
                     std::span<Real> radii, Exec exec) {
  const long n = static_cast<long>(z.size());
  auto body = [&](long i) {
    const Complex& zi = z[static_cast<std::size_t>(i)];
    const mpfr_prec_t prec = zi.prec();
    Complex p(prec), dp(prec);
    horner2(coeffs, zi, p, dp);
    // Bound on evaluation rounding plus coefficient uncertainty.
    Real az = abs(zi);
    Real pw(1.0L, prec), mag(prec), err(prec);
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      mag += abs(coeffs[k]) * pw;
      if (k < coeff_err.size()) err += coeff_err[k] * pw;
      pw *= az;
    }
    Real slack = mul_2si(Real(1.0L, prec), -static_cast<long>(prec) + static_cast<long>(std::log2(4.0 * n + 8)) + 4);
    Real resid = abs(p) + err + mag * slack;
    Real den(1.0L, prec);
    for (long j = 0; j < n; ++j) {
      if (j == i) continue;
      den *= abs(zi - z[static_cast<std::size_t>(j)]);
    }
    Real r = Real(static_cast<long double>(n), prec) * resid / den;
    r *= Real(1.0L, prec) + mul_2si(Real(1.0L, prec), -static_cast<long>(prec) / 2);
    radii[static_cast<std::size_t>(i)] = r;
  };
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 4)
    for (long i = 0; i < n; ++i) body(i);
  } else {
    for (long i = 0; i < n; ++i) body(i);
  }
}

}  // namespace kernels

RootIsolation isolate_roots(std::span<const Complex> coeffs, std::span<const Real> coeff_err, mpfr_prec_t prec,
                            Exec exec) {
  if (coeffs.empty()) throw InputError("roots", "zero polynomial");
  return isolate_impl(coeffs, coeff_err, prec, exec, nullptr);
}

RootIsolation isolate_roots(const ZPoly& f, mpfr_prec_t min_prec, Exec exec) {
  if (!is_monic(f)) throw InputError("roots", "polynomial must be monic");
  long bits = 0;
  for (const auto& c : f) bits = std::max(bits, bit_length(c));
  mpfr_prec_t prec = std::max<mpfr_prec_t>(min_prec, bits + 128);
  const std::vector<Complex>* guess = nullptr;
  RootIsolation last;
  for (int attempt = 0; attempt < 6; ++attempt, prec *= 2) {
    std::vector<Complex> c;
    for (const auto& a : f) c.emplace_back(Real(a, prec), Real(prec));
    try {
      return isolate_impl(c, {}, prec, exec, guess);
    } catch (const PrecisionError&) {
    }
  }
  throw PrecisionError("roots", "root isolation failed after precision doubling");
}

MahlerValue log_mahler(const CoeffProvider& provider, mpfr_prec_t start_prec, long double tol, Exec exec) {
  mpfr_prec_t prec = start_prec;
  std::vector<Complex> guess;
  for (int attempt = 0; attempt < 6; ++attempt, prec *= 2) {
    std::vector<Complex> c;
    std::vector<Real> err;
    provider(prec, c, err);
    if (c.size() <= 1) return MahlerValue{0, 0, prec};
    RootIsolation iso;
    try {
      iso = isolate_impl(c, err, prec, exec, guess.empty() ? nullptr : &guess);
    } catch (const PrecisionError&) {
      guess.clear();
      continue;
    }
    Real sum(prec), errsum(prec);
    Real one(1.0L, prec);
    for (std::size_t i = 0; i < iso.roots.size(); ++i) {
      Real a = abs(iso.roots[i]);
      if (a > one) sum += log(a);
      Real lower = a - iso.radii[i];
      errsum += iso.radii[i] / max(one, lower);
    }
    long double e = errsum.to_ld_up() + std::ldexp(static_cast<long double>(c.size()), -static_cast<int>(prec) + 8);
    guess = iso.roots;
    if (e <= tol) return MahlerValue{sum.to_ld(), e, prec};
  }
  throw PrecisionError("roots", "Mahler measure not certified to the requested tolerance");
}

MahlerValue log_mahler(const ZPoly& f, long double tol, Exec exec) {
  if (!is_monic(f)) throw InputError("roots", "polynomial must be monic");
  long bits = 0;
  for (const auto& c : f) bits = std::max(bits, bit_length(c));
  auto provider = [&f](mpfr_prec_t prec, std::vector<Complex>& c, std::vector<Real>& err) {
    c.clear();
    err.clear();
    for (const auto& a : f) c.emplace_back(Real(a, prec), Real(prec));
  };
  return log_mahler(provider, std::max<mpfr_prec_t>(128, bits + 128), tol, exec);
}

}  // namespace tpadic
