#include <benchmark/benchmark.h>

#include "coarsegrp/geom.hpp"
#include "coarsegrp/random.hpp"

using namespace cg;

static void BM_CoverDim1(benchmark::State& state) {
  const auto w = geom::make_asdim_witness(1, geom::cube(1, state.range(0)), 10000);
  for (auto _ : state) benchmark::DoNotOptimize(geom::check_cover(w));
}
BENCHMARK(BM_CoverDim1)->Arg(1)->Arg(10)->Arg(100);

static void BM_CoverDim2(benchmark::State& state) {
  const long rho = state.range(0);
  const auto w = geom::make_asdim_witness(2, geom::cube(2, rho), 30 * (rho + 1));
  for (auto _ : state) benchmark::DoNotOptimize(geom::check_cover(w));
}
BENCHMARK(BM_CoverDim2)->Arg(1)->Arg(4)->Arg(9)->Unit(benchmark::kMillisecond);

static void BM_SmallSet(benchmark::State& state) {
  Rng rng(6);
  std::vector<geom::PeriodicSet> sets;
  for (int i = 0; i < 64; ++i) sets.push_back(geom::random_periodic(rng, 12, 4, 50));
  for (auto _ : state)
    for (const auto& a : sets) benchmark::DoNotOptimize(geom::dlt_vs_small(a));
}
BENCHMARK(BM_SmallSet);
