#include <benchmark/benchmark.h>

#include "shp/circuits.hpp"
#include "shp/spectral.hpp"

namespace {

void BM_CountPiStarToeplitz(benchmark::State& state) {
  const shp::LinkTable table(shp::LinkFunction::toeplitz(), static_cast<int>(state.range(0)));
  const shp::Word w = shp::Word::parse("abcabc");
  for (auto _ : state) benchmark::DoNotOptimize(shp::count_pi_star(table, w).count);
}
BENCHMARK(BM_CountPiStarToeplitz)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_CountJointToeplitzHankel(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const shp::LinkTable t(shp::LinkFunction::toeplitz(), n);
  const shp::LinkTable h(shp::LinkFunction::hankel(), n);
  const shp::Word a = shp::Word::parse("abab");
  const shp::Word b = shp::Word::parse("abba");
  for (auto _ : state) benchmark::DoNotOptimize(shp::count_pi_star_joint(t, h, a, b).count);
}
BENCHMARK(BM_CountJointToeplitzHankel)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_Realize(benchmark::State& state) {
  const shp::LinkTable table(shp::LinkFunction::wigner(), static_cast<int>(state.range(0)));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(shp::realize(table, shp::Distribution::Gaussian, ++seed).n());
  }
}
BENCHMARK(BM_Realize)->Arg(250)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_Eigenvalues(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  shp::ProductSpec spec;
  spec.link_x = shp::LinkFunction::toeplitz();
  spec.link_y = shp::LinkFunction::hankel();
  spec.n = n;
  const auto z = shp::realize_product(spec, 0);
  for (auto _ : state) benchmark::DoNotOptimize(shp::eigenvalues(z).eigenvalues.data());
}
BENCHMARK(BM_Eigenvalues)->Arg(250)->Arg(500)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
