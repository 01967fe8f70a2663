#include <benchmark/benchmark.h>

#include "shellrecon/forward.hpp"
#include "shellrecon/inverse.hpp"
#include "shellrecon/nd_map.hpp"
#include "shellrecon/oracle.hpp"
#include "shellrecon/special_fn.hpp"

using namespace shellrecon;

static void BM_BesselLog(benchmark::State& state) {
  const Order o = Order::integer(static_cast<int>(state.range(0)));
  double x = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bessel_log(o, x));
    x = x < 40.0 ? x * 1.01 : 0.5;
  }
}
BENCHMARK(BM_BesselLog)->Arg(0)->Arg(20)->Arg(200);

static void BM_NdSymbol(benchmark::State& state) {
  const ShellConfig c{Dimension::Three, 0.5, 2.0};
  for (auto _ : state) benchmark::DoNotOptimize(nd_symbol(c, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_NdSymbol)->Arg(1)->Arg(64);

static void BM_DifferenceNorm(benchmark::State& state) {
  const NdOperator a = NdOperator::shell({Dimension::Two, 0.5, 2.0});
  const NdOperator b = NdOperator::reference(Dimension::Two);
  for (auto _ : state) benchmark::DoNotOptimize(difference_norm(a, b));
}
BENCHMARK(BM_DifferenceNorm);

static void BM_RecoverSigma(benchmark::State& state) {
  BoundaryData g = BoundaryData::fourier();
  g.set({0, 0}, 0.5);
  g.set({1, 0}, 1.0);
  g.set({2, 0}, 0.25);
  const Measurement m = Measurement::synthesize({Dimension::Two, 0.5, 2.0}, g);
  for (auto _ : state) benchmark::DoNotOptimize(recover_sigma(m, 0.5));
}
BENCHMARK(BM_RecoverSigma);

static void BM_FindNonuniqPairs(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(find_nonuniq_pairs({Dimension::Two, 0.5, 2.0}, 0.7, 1));
  }
}
BENCHMARK(BM_FindNonuniqPairs);

static void BM_OracleSolve(benchmark::State& state) {
  const RadialProblem p{{Dimension::Two, 0.5, 2.0}, 2, static_cast<int>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(solve_radial_bvp(p));
}
BENCHMARK(BM_OracleSolve)->Arg(1000)->Arg(4000);
BENCHMARK_MAIN();
