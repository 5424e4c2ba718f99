#include <benchmark/benchmark.h>

#include "topohex/mesh.hpp"

static void BM_BuildMesh(benchmark::State& state) {
  const int hnex = static_cast<int>(state.range(0));
  const int hney = static_cast<int>(state.range(1));
  for (auto _ : state) {
    auto mesh = topohex::build_mesh({hnex, hney});
    benchmark::DoNotOptimize(mesh.nnode);
  }
}
BENCHMARK(BM_BuildMesh)->Args({60, 20})->Args({120, 40})->Args({300, 100});

BENCHMARK_MAIN();
