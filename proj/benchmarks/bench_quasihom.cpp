#include <benchmark/benchmark.h>

#include "coarsegrp/bigrank.hpp"
#include "coarsegrp/quasihom.hpp"
#include "coarsegrp/random.hpp"

using namespace cg;

// Exhaustive scan over [-r, r]^2 pairs.
static void BM_DefectExhaustive(benchmark::State& state) {
  const auto f = quasihom::QhMap::affine_floor({quasihom::Rational(1, 2)});
  quasihom::DefectOptions o;
  o.radii = {state.range(0)};
  for (auto _ : state) benchmark::DoNotOptimize(quasihom::defect(f, o));
}
BENCHMARK(BM_DefectExhaustive)->Arg(250)->Arg(500)->Arg(1000)->Arg(2000)->Unit(benchmark::kMillisecond);

static void BM_DefectSampledRank2(benchmark::State& state) {
  const auto f = quasihom::QhMap::affine_floor({quasihom::Rational(1, 3), quasihom::Rational(-2, 5)});
  quasihom::DefectOptions o;
  o.radii = {100, 1000};
  o.samples_per_radius = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(quasihom::defect(f, o));
}
BENCHMARK(BM_DefectSampledRank2)->Arg(1000)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

static void BM_StructuredEndo(benchmark::State& state) {
  Rng rng(5);
  const auto f = bigrank::random_endo(rng, static_cast<std::size_t>(state.range(0)), 4);
  for (auto _ : state) benchmark::DoNotOptimize(bigrank::analyze_structured(f));
}
BENCHMARK(BM_StructuredEndo)->Arg(2)->Arg(4)->Arg(6);
