#include <benchmark/benchmark.h>

#include "ruinlab/claims.hpp"
#include "ruinlab/rng.hpp"

namespace {

using ruinlab::ClaimDistribution;
using ruinlab::RngStream;

void BM_RngUniform(benchmark::State& state) {
  RngStream rng(42, 0);
  for (auto _ : state) benchmark::DoNotOptimize(rng.uniform01());
}
BENCHMARK(BM_RngUniform);

void BM_SamplePareto(benchmark::State& state) {
  const auto dist = ClaimDistribution::pareto(2.0, 1.0);
  RngStream rng(42, 0);
  for (auto _ : state) benchmark::DoNotOptimize(dist.sample(rng));
}
BENCHMARK(BM_SamplePareto);

void BM_SampleLognormal(benchmark::State& state) {
  const auto dist = ClaimDistribution::lognormal(0.0, 1.0);
  RngStream rng(42, 0);
  for (auto _ : state) benchmark::DoNotOptimize(dist.sample(rng));
}
BENCHMARK(BM_SampleLognormal);

void BM_MeanExcessLognormal(benchmark::State& state) {
  const auto dist = ClaimDistribution::lognormal(0.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(dist.mean_excess(50.0));
}
BENCHMARK(BM_MeanExcessLognormal);

}  // namespace
