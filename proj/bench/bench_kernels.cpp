// Serial reference against the OpenMP path for the three hot kernels.
// Run with OMP_NUM_THREADS set; on one core the two paths should be level.
#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "tpadic/construct.hpp"
#include "tpadic/oracle.hpp"
#include "tpadic/roots.hpp"
#include "tpadic/verify.hpp"

using namespace tpadic;

namespace {

Exec mode(const benchmark::State& st) { return st.range(0) == 0 ? Exec::serial : Exec::parallel; }

ZPoly random_monic(int n, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> d(-50, 50);
  ZPoly f;
  for (int i = 0; i < n; ++i) f.push_back(Int(d(rng)));
  f.push_back(1);
  return f;
}

void BM_AberthSweep(benchmark::State& st) {
  const int n = static_cast<int>(st.range(1));
  const ZPoly f = random_monic(n, 7);
  std::vector<Complex> c, z, w(static_cast<std::size_t>(n), Complex(256));
  for (const auto& a : f) c.emplace_back(Real(a, 256), Real(0.0L, 256));
  for (int i = 0; i < n; ++i)
    z.emplace_back(Real(2 * std::cos(0.3L + 6.283L * i / n), 256), Real(2 * std::sin(0.3L + 6.283L * i / n), 256));
  for (auto _ : st) {
    kernels::aberth_corrections(c, z, w, mode(st));
    benchmark::DoNotOptimize(w.data());
  }
}
BENCHMARK(BM_AberthSweep)->ArgNames({"par", "n"})->ArgsProduct({{0, 1}, {64, 256}})->Unit(benchmark::kMillisecond);

void BM_LogMahler(benchmark::State& st) {
  const ZPoly f = random_monic(static_cast<int>(st.range(1)), 11);
  for (auto _ : st) benchmark::DoNotOptimize(log_mahler(f, 1e-12L, mode(st)));
}
BENCHMARK(BM_LogMahler)->ArgNames({"par", "n"})->ArgsProduct({{0, 1}, {32, 96}})->Unit(benchmark::kMillisecond);

void BM_SplittingConditions(benchmark::State& st) {
  JobConfig cfg;
  cfg.min_poly = parse_poly("x");
  PrimeSpec s;
  s.p = 2;
  cfg.primes.push_back(s);
  cfg.rho = st.range(1);
  const Construction C = construct(cfg);
  const PrimeRun& R = C.primes[0];
  const LocalPoly g = embed_poly(R.local, C.g.coeffs);
  const int b = R.k + static_cast<int>(C.plan.c.get_si()) - 1;
  std::vector<RootCertificate> out;
  for (auto _ : st) {
    kernels::splitting_conditions(*R.local.E, g, R.At.elements, b, out, nullptr, mode(st));
    benchmark::DoNotOptimize(out.data());
  }
  st.counters["degree"] = static_cast<double>(C.plan.degree.get_d());
}
BENCHMARK(BM_SplittingConditions)->ArgNames({"par", "rho"})->ArgsProduct({{0, 1}, {24, 100}})->Unit(benchmark::kMillisecond);

void BM_Search(benchmark::State& st) {
  SearchOptions o;
  o.exec = mode(st);
  for (auto _ : st) benchmark::DoNotOptimize(search_small_height({2}, 3, st.range(1), o));
}
BENCHMARK(BM_Search)->ArgNames({"par", "H"})->ArgsProduct({{0, 1}, {4, 8}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
