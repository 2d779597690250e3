#include <benchmark/benchmark.h>

#include "subgauss/beta.hpp"
#include "subgauss/dirichlet.hpp"
#include "subgauss/kummer.hpp"
#include "subgauss/verify.hpp"

namespace {

using subgauss::BetaParams;

void BM_Kummer(benchmark::State& state) {
  const double x = static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(subgauss::log_kummer_1f1(subgauss::KummerArgs(1.3, 4.1, x)));
  }
}
BENCHMARK(BM_Kummer)->Arg(-50)->Arg(-1)->Arg(1)->Arg(10)->Arg(50)->Arg(500);

void BM_OptimalProxy(benchmark::State& state) {
  const BetaParams p(0.3, static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(subgauss::optimal_proxy_variance(p));
}
BENCHMARK(BM_OptimalProxy)->Arg(1)->Arg(4)->Arg(10)->Arg(50);

void BM_DirichletProxy(benchmark::State& state) {
  const subgauss::DirichletParams d({0.5, 1.0, 2.0, 3.0, 7.0});
  for (auto _ : state) benchmark::DoNotOptimize(subgauss::dirichlet_optimal_proxy(d));
}
BENCHMARK(BM_DirichletProxy);

void BM_SupRatioOracle(benchmark::State& state) {
  const BetaParams p(1.0, 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(subgauss::sup_ratio_oracle(p));
}
BENCHMARK(BM_SupRatioOracle)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
