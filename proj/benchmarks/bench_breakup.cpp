#include <benchmark/benchmark.h>

#include "breakup/grid.hpp"
#include "breakup/observables.hpp"
#include "breakup/params.hpp"
#include "breakup/schmidt.hpp"
#include "breakup/schmidt_svd.hpp"
#include "breakup/states.hpp"
#include "breakup/transforms.hpp"

using namespace breakup;
using namespace breakup::oracle;

namespace {

const BreakupParams kRef(2.0, 0.5);

Grid2D momentum_grid(int n) {
  const GridSpec spec = auto_grid_spec(kRef, 1.0, n);
  return normalize(discretize(
      [](double k1, double k2) { return psi_momentum(k1, k2, 0.0, kRef); },
      spec, SpaceTag::momentum));
}

void BM_PsiPosition(benchmark::State& state) {
  double x = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(psi_position(0.3, x, 1.0, kRef));
    x += 1e-7;
  }
}
BENCHMARK(BM_PsiPosition);

void BM_VarianceReport(benchmark::State& state) {
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(variance_report(t, kRef));
    t += 1e-7;
  }
}
BENCHMARK(BM_VarianceReport);

void BM_SchmidtPartialSum(benchmark::State& state) {
  const int n_max = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(schmidt_partial_sum(n_max, 0.7, -0.4, 1.0, kRef));
  }
}
BENCHMARK(BM_SchmidtPartialSum)->Arg(8)->Arg(40);

void BM_Discretize(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const GridSpec spec = auto_grid_spec(kRef, 0.0, n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(discretize(
        [](double x1, double x2) { return psi_position(x1, x2, 0.0, kRef); },
        spec, SpaceTag::position));
  }
}
BENCHMARK(BM_Discretize)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_ToMomentum(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const GridSpec spec = auto_grid_spec(kRef, 0.0, n);
  const Grid2D pos = normalize(discretize(
      [](double x1, double x2) { return psi_position(x1, x2, 0.0, kRef); },
      spec, SpaceTag::position));
  for (auto _ : state) {
    benchmark::DoNotOptimize(to_momentum(pos));
  }
}
BENCHMARK(BM_ToMomentum)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_EvolveFree(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Grid2D mom = momentum_grid(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(evolve_free(mom, 1.0, kRef));
  }
}
BENCHMARK(BM_EvolveFree)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_SchmidtSvd(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Grid2D mom = momentum_grid(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(schmidt_svd(mom));
  }
}
BENCHMARK(BM_SchmidtSvd)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
