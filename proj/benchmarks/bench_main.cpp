#include <benchmark/benchmark.h>

#include <random>

#include "tropica/diagram.hpp"
#include "tropica/dynamics.hpp"
#include "tropica/exact.hpp"
#include "tropica/minplus.hpp"
#include "tropica/spectral.hpp"

namespace {

using namespace tropica;

MinPlusMatrix random_positive(std::size_t size, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> cost(0.01, 1.0);
  std::bernoulli_distribution present(0.5);
  MinPlusMatrix a(size, size);
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = 0; j < size; ++j)
      if (present(rng)) a(i, j) = MinPlusScalar(cost(rng));
  return a;
}

void BM_KleeneStar(benchmark::State& state) {
  const MinPlusMatrix a = random_positive(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(kleene_star(a));
}
BENCHMARK(BM_KleeneStar)->RangeMultiplier(2)->Range(4, 64);

void BM_EigenSetAndExtend(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const DerivedParams p = derive(allocate(n, n, 0.3));
  for (auto _ : state) {
    for (const EigenValue& e : eigen_set(p))
      benchmark::DoNotOptimize(extend_full(p, reduced_eigenvector(p, e.regime)));
  }
}
BENCHMARK(BM_EigenSetAndExtend)->RangeMultiplier(4)->Range(2, 128);

void BM_Simulate(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const TrafficConfig config = allocate(n, n, 0.35);
  const StateVector x0{std::vector<double>(2 * n, 0.0), 0};
  for (auto _ : state) benchmark::DoNotOptimize(simulate(config, x0, 1000, 1));
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_Simulate)->RangeMultiplier(4)->Range(2, 128);

void BM_ExactLinearity(benchmark::State& state) {
  const TrafficConfig config = allocate(2, 7, 0.27);
  for (auto _ : state) benchmark::DoNotOptimize(exact::linearity_deviation(config, Regime::R3, 100));
}
BENCHMARK(BM_ExactLinearity);

void BM_Sweep(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(sweep(4, 3, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_Sweep)->Arg(201)->Arg(2001);

}  // namespace

BENCHMARK_MAIN();
