#include <benchmark/benchmark.h>

#include <vector>

#include "mqc/propagation.hpp"
#include "mqc/restore.hpp"
#include "mqc/sectors.hpp"
#include "mqc/transfer.hpp"

using namespace mqc;

namespace {

// Hamiltonian blocks plus eigensystems for sectors 0..l_max.
void BM_SectorSpectra(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int l_max = static_cast<int>(state.range(1));
  for (auto _ : state) {
    const auto system = build_sectors(n, 1.0, {l_max});
    for (int l = 0; l <= l_max; ++l) benchmark::DoNotOptimize(system->spectrum(l));
  }
}
BENCHMARK(BM_SectorSpectra)->Args({12, 12})->Args({16, 3})->Args({20, 3})
    ->Unit(benchmark::kMillisecond);

void BM_Propagators(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto system = build_sectors(n, 1.0, {3});
  for (int l = 0; l <= 3; ++l) system->spectrum(l);
  double t = 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(propagators(system, t));
    t += 0.1;
  }
}
BENCHMARK(BM_Propagators)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_TransferMap(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const TransferEngine engine({n, 2, 10.0}, 1.0, 3);
  engine.transfer_map(1.0);  // warm the spectra
  double t = 5.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(engine.transfer_map(t));
    t += 0.1;
  }
}
BENCHMARK(BM_TransferMap)->Arg(10)->Arg(14)->Unit(benchmark::kMillisecond);

void BM_SeriesEvaluate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const TransferEngine engine({n, 2, 10.0}, 1.0, 3);
  const SpectralSeries series = engine.top_coherence_series();
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(series.evaluate(t));
    t += 0.01;
  }
}
BENCHMARK(BM_SeriesEvaluate)->Arg(10)->Arg(14)->Unit(benchmark::kMicrosecond);

void BM_RestorePhases(benchmark::State& state) {
  const TransferEngine engine({10, 2, 10.0}, 1.0, -1);
  const TransferMap map = engine.transfer_map(9.0);
  OptimizerSettings settings;
  settings.starts = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(optimize_phases(map, single_quantum_target(), settings));
  }
}
BENCHMARK(BM_RestorePhases)->Arg(1)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
