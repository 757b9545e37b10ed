#include <benchmark/benchmark.h>

#include "coarsegrp/fgab.hpp"
#include "coarsegrp/intlat.hpp"
#include "coarsegrp/morph.hpp"
#include "coarsegrp/random.hpp"
#include "coarsegrp/sample.hpp"

using namespace cg;

static void BM_SmithNormalForm(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(1);
  const auto m = sample::matrix(rng, n, n, 50);
  for (auto _ : state) benchmark::DoNotOptimize(intlat::smith_normal_form(m));
}
BENCHMARK(BM_SmithNormalForm)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

static void BM_HermiteNormalForm(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(2);
  const auto m = sample::matrix(rng, n, n, 50);
  for (auto _ : state) benchmark::DoNotOptimize(intlat::hermite_normal_form(m));
}
BENCHMARK(BM_HermiteNormalForm)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

static void BM_Pullback(benchmark::State& state) {
  Rng rng(3);
  const auto x = sample::group(rng, 3, 12), y = sample::group(rng, 3, 12), z = sample::group(rng, 3, 12);
  const auto f = sample::hom(rng, y, z, 6), g = sample::hom(rng, x, z, 6);
  for (auto _ : state) benchmark::DoNotOptimize(fgab::pullback(f, g));
}
BENCHMARK(BM_Pullback);

static void BM_AnalyzeHom(benchmark::State& state) {
  Rng rng(4);
  const auto g = sample::group(rng, 3, 12), h = sample::group(rng, 3, 12);
  const auto f = sample::hom(rng, g, h, 6);
  const auto ig = coarse::GroupIdeal::finitary(g), ih = coarse::GroupIdeal::finitary(h);
  for (auto _ : state) benchmark::DoNotOptimize(morph::analyze_hom(f, ig, ih));
}
BENCHMARK(BM_AnalyzeHom);
