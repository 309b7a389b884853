#include <benchmark/benchmark.h>

#include "segspec/spectra.hpp"
#include "segspec/tiling.hpp"
#include "segspec/zero_set.hpp"

using namespace segspec;

static void BM_RhoHat(benchmark::State& state) {
  const SymmetricAdditiveMeasure m(Scalar::ratio(1, 3));
  double x = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(rho_hat(m, {x, -x}));
    x += 1e-3;
  }
}
BENCHMARK(BM_RhoHat);

static void BM_LineRoots(benchmark::State& state) {
  const SymmetricAdditiveMeasure m(Scalar::parse("sqrt(2)"));
  const double w = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(line_roots(m, LineWindow{3, -w, w}));
}
BENCHMARK(BM_LineRoots)->Arg(10)->Arg(100);

static void BM_GreedyPack(benchmark::State& state) {
  const SymmetricAdditiveMeasure m(Scalar::ratio(-1, 4));
  const double w = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(greedy_pack(m, w, 0.05));
}
BENCHMARK(BM_GreedyPack)->Arg(5)->Arg(10)->Unit(benchmark::kMillisecond);

static void BM_TilesLine(benchmark::State& state) {
  const IntervalUnion tile({{Scalar(0), Scalar(1), 1.0}, {Scalar::ratio(5, 3), Scalar::ratio(8, 3), 1.0}});
  const IntervalUnion cells({{Scalar(0), Scalar(1), 1.0}, {Scalar(3), Scalar(4), 1.0}, {Scalar(5), Scalar(6), 1.0}});
  for (auto _ : state) {
    benchmark::DoNotOptimize(tiles_line(tile));
    benchmark::DoNotOptimize(tiles_line(cells));
  }
}
BENCHMARK(BM_TilesLine);
BENCHMARK_MAIN();
