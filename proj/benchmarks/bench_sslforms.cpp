#include <benchmark/benchmark.h>

#include <random>

#include "sslforms/divisor_poly.hpp"
#include "sslforms/supersingular.hpp"
#include "sslforms/trace_formula.hpp"

using namespace sslforms;

namespace {

void BM_HurwitzTable(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(HurwitzTable(n));
}
BENCHMARK(BM_HurwitzTable)->Arg(1000)->Arg(10000)->Arg(100000);

void BM_TraceExact(benchmark::State& state) {
  TraceEngine engine;
  engine.reserve(16);
  for (auto _ : state) benchmark::DoNotOptimize(engine.trace_exact(state.range(0), 2));
}
BENCHMARK(BM_TraceExact)->Arg(24)->Arg(2196)->Arg(12172);

// Trace form through the Sturm bound, p = 13.
void BM_TraceForm(benchmark::State& state) {
  const PrimeModulus p(13);
  const i64 k = state.range(0);
  const auto precision = static_cast<std::size_t>(weight_profile(k).m + 1);
  TraceEngine engine;
  engine.reserve(hurwitz_bound_for_precision(precision));
  for (auto _ : state) benchmark::DoNotOptimize(engine.trace_form(k, p, precision));
}
BENCHMARK(BM_TraceForm)->Arg(300)->Arg(2196)->Arg(12000)->Unit(benchmark::kMillisecond);

void BM_DivisorPolynomial(benchmark::State& state) {
  const PrimeModulus p(13);
  const i64 k = state.range(0);
  const auto precision = static_cast<std::size_t>(weight_profile(k).m + 1);
  TraceEngine engine;
  const QExpansion f = engine.trace_form(k, p, precision);
  for (auto _ : state) benchmark::DoNotOptimize(divisor_polynomial(f));
}
BENCHMARK(BM_DivisorPolynomial)->Arg(300)->Arg(2196)->Arg(12000)->Unit(benchmark::kMillisecond);

void BM_Factor(benchmark::State& state) {
  const PrimeModulus p(10007);
  std::mt19937_64 rng(1);
  std::vector<u64> c(static_cast<std::size_t>(state.range(0)) + 1);
  for (auto& x : c) x = rng() % p.value();
  c.back() = 1;
  const FpPolynomial f(p, c);
  for (auto _ : state) benchmark::DoNotOptimize(poly_factor(f));
}
BENCHMARK(BM_Factor)->Arg(16)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_SupersingularOracle(benchmark::State& state) {
  const PrimeModulus p(static_cast<u64>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(supersingular_oracle(p));
}
BENCHMARK(BM_SupersingularOracle)->Arg(97)->Arg(211)->Unit(benchmark::kMillisecond);

void BM_SupersingularDeligne(benchmark::State& state) {
  const PrimeModulus p(static_cast<u64>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(supersingular_deligne(p));
}
BENCHMARK(BM_SupersingularDeligne)->Arg(97)->Arg(499)->Arg(1009)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
