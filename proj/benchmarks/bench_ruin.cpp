#include <benchmark/benchmark.h>

#include "ruinlab/ruin.hpp"

namespace {

using namespace ruinlab;

void BM_RuinPathOracle(benchmark::State& state) {
  const RiskConfig cfg{2.0, 2.0, ClaimDistribution::exponential(1.0),
                       ArrivalModel::poisson(1.0)};
  std::uint64_t path = 0;
  for (auto _ : state) {
    RngStream rng(11, path++);
    benchmark::DoNotOptimize(simulate_ruin_path(cfg, 40.0, rng));
  }
}
BENCHMARK(BM_RuinPathOracle);

void BM_RuinPathHawkesPareto(benchmark::State& state) {
  const RiskConfig cfg{20.0, 6.0, ClaimDistribution::pareto(2.0, 1.0),
                       ArrivalModel::hawkes(1.0, Kernel::exponential(0.5, 1.0))};
  std::uint64_t path = 0;
  for (auto _ : state) {
    RngStream rng(11, path++);
    benchmark::DoNotOptimize(simulate_ruin_path(cfg, 134.0, rng));
  }
}
BENCHMARK(BM_RuinPathHawkesPareto);

}  // namespace
