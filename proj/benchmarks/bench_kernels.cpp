#include <benchmark/benchmark.h>

#include <vector>

#include "nssol/fields.hpp"
#include "nssol/profiles.hpp"
#include "nssol/residual.hpp"

namespace {

using namespace nssol;

ModelParams power_law_model() {
  ModelParams p;
  p.N = 3;
  p.gamma = 5.0 / 3.0;
  p.theta = 1.0;
  return p;
}

std::vector<double> span(double lo, double hi, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  return v;
}

void BM_PowerLawProfile(benchmark::State& state) {
  const ModelParams p = power_law_model();
  TabulationOptions opt;
  opt.dz = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(powerlaw_profile(p, -1, 1, 1, 1, 0.5, opt));
}
BENCHMARK(BM_PowerLawProfile)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_EvalGrid(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto threads = static_cast<std::size_t>(state.range(1));
  const SelfSimilarSolution sol = make_solution(power_law_model(), PowerLawFamily{-1, 1, 1, 1}, 0.9);
  const auto t = span(0, 0.9, n), r = span(0.01, 2, n);
  for (auto _ : state) benchmark::DoNotOptimize(sol.grid(t, r, threads));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(n * n));
}
BENCHMARK(BM_EvalGrid)->Args({256, 1})->Args({256, 0})->Unit(benchmark::kMillisecond);

void BM_VerifyWindow(benchmark::State& state) {
  ModelParams p;
  p.N = 1;
  p.gamma = 2;
  p.theta = 2;
  const SelfSimilarSolution sol = make_solution(p, PolytropicFamily{1, 1, 0.5}, 0.4);
  const FieldFn f = sol.evaluator();
  VerifyOptions opt;
  opt.lattice = static_cast<std::size_t>(state.range(0));
  opt.threads = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(verify_window(f, p, {0.1, 0.3, 0.1, 2}, {{1e-3, 1e-3}, {5e-4, 5e-4}}, opt));
  }
}
BENCHMARK(BM_VerifyWindow)->Args({33, 1})->Args({33, 0})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
