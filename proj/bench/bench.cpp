#include <benchmark/benchmark.h>

#include <complex>
#include <memory>
#include <vector>

#include "confmap/fredholm.hpp"
#include "confmap/kernels.hpp"
#include "confmap/mapper.hpp"

using namespace confmap;

namespace {

TrigBoundary example3() {
  return TrigBoundary::from_terms({{1, 1.0}, {-2, 0.25}, {-3, cplx(0.0, 0.125)}});
}

void BM_KernelGrid(benchmark::State& state, Execution exec) {
  const TrigBoundary b = example3();
  const int N = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fill_kernel_grid(b, N, exec));
}

void BM_AssemblyFast(benchmark::State& state) {
  const KernelGrid grid = fill_kernel_grid(example3(), static_cast<int>(state.range(0)));
  const int M = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(assemble_system(grid, M));
}

void BM_AssemblyNaive(benchmark::State& state) {
  const KernelGrid grid = fill_kernel_grid(example3(), static_cast<int>(state.range(0)));
  const int M = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(assemble_system_naive(grid, M));
}

void BM_MapGrid(benchmark::State& state, Execution exec) {
  const TrigBoundary b = example3();
  const FredholmSolution sol = solve(assemble_system(b, 64, 1024));
  const DiskMap map(std::make_shared<const BoundaryCorrespondence>(
      std::make_shared<const RawCorrespondence>(b, sol)));
  std::vector<cplx> pts;
  for (int r = 1; r <= 9; ++r) {
    for (int j = 0; j < 64; ++j) pts.push_back(std::polar(0.1 * r, kTwoPi * j / 64));
  }
  for (auto _ : state) benchmark::DoNotOptimize(map_grid(map, pts, exec));
}

}  // namespace

BENCHMARK_CAPTURE(BM_KernelGrid, parallel, Execution::Parallel)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_KernelGrid, serial, Execution::Serial)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AssemblyFast)->Args({256, 16})->Args({1024, 64})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AssemblyNaive)->Args({256, 16})->Args({1024, 64})->Unit(benchmark::kMillisecond)->Iterations(1);
BENCHMARK_CAPTURE(BM_MapGrid, parallel, Execution::Parallel)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_MapGrid, serial, Execution::Serial)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
