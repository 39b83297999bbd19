#include <benchmark/benchmark.h>

#include "ruinlab/arrivals.hpp"
#include "ruinlab/ldp.hpp"

namespace {

using namespace ruinlab;

// Events per second is the figure of merit: report items = emitted count.
void BM_SimulateHawkes(benchmark::State& state) {
  const auto model =
      ArrivalModel::hawkes(1.0, Kernel::exponential(0.5, 1.0));
  const double horizon = static_cast<double>(state.range(0));
  ArrivalSequencer seq;
  std::uint64_t events = 0, path = 0;
  for (auto _ : state) {
    RngStream rng(7, path++);
    seq.reset(model, horizon, rng);
    while (seq.next()) {
    }
    events += seq.emitted();
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(events));
}
BENCHMARK(BM_SimulateHawkes)->Arg(100)->Arg(1000);

void BM_SimulateCox(benchmark::State& state) {
  const auto model = ArrivalModel::cox_shot_noise(
      CoxBaseline::constant(1.0), 2.0, Kernel::exponential(0.5, 2.0));
  ArrivalSequencer seq;
  std::uint64_t events = 0, path = 0;
  for (auto _ : state) {
    RngStream rng(7, path++);
    seq.reset(model, 1000.0, rng);
    while (seq.next()) {
    }
    events += seq.emitted();
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(events));
}
BENCHMARK(BM_SimulateCox);

void BM_SimulateSelfCorrecting(benchmark::State& state) {
  const auto model = ArrivalModel::self_correcting(RateCurve::logistic(0.5, 2.0));
  ArrivalSequencer seq;
  std::uint64_t events = 0, path = 0;
  for (auto _ : state) {
    RngStream rng(7, path++);
    seq.reset(model, 1000.0, rng);
    while (seq.next()) {
    }
    events += seq.emitted();
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(events));
}
BENCHMARK(BM_SimulateSelfCorrecting);

void BM_CoxRate(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(cox_rate(3.0, 1.0, 1.0, 0.5));
}
BENCHMARK(BM_CoxRate);

}  // namespace
