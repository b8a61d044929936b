#include <benchmark/benchmark.h>

#include "js/classical.hpp"
#include "js/parallel.hpp"
#include "js/spectral.hpp"

namespace {

std::vector<double> grid(int n) {
  std::vector<double> g(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) g[static_cast<size_t>(i)] = -0.95 + 1.9 * i / (n - 1);
  return g;
}

void weight_grid(benchmark::State& st, js::Exec exec) {
  auto c = js::CoeffSequence::stabilizing_power(0.3, 0.7);
  js::JostOptions opt;
  opt.report = js::classify(c);
  opt.nmax = 2000;
  auto g = grid(static_cast<int>(st.range(0)));
  for (auto _ : st) {
    auto out = js::grid_map(g, [&](double l) { return js::spectral_weight(c, l, opt).tau; }, exec);
    benchmark::DoNotOptimize(out.data());
  }
  st.counters["threads"] = exec == js::Exec::Serial ? 1 : js::thread_count();
}

void BM_WeightSerial(benchmark::State& st) { weight_grid(st, js::Exec::Serial); }
void BM_WeightParallel(benchmark::State& st) { weight_grid(st, js::Exec::Parallel); }

}  // namespace

BENCHMARK(BM_WeightSerial)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WeightParallel)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
