#include <benchmark/benchmark.h>

#include <memory>

#include "dalnet/dalnet.hpp"

namespace {

using namespace dalnet;

std::shared_ptr<const Network> network(double scale) {
  return std::make_shared<const Network>(read_network(DALNET_DATA_DIR "/diamond.json").scaled(scale));
}

void BM_SimulateHawkes(benchmark::State& state) {
  const auto net = network(static_cast<double>(state.range(0)));
  const HawkesModel model({1.0, 0.8, 5.0});
  const auto algorithm = state.range(1) == 0 ? Algorithm::inverse : Algorithm::ogata;
  std::uint64_t seed = 0;
  std::size_t points = 0;
  for (auto _ : state) {
    const PointPattern p = simulate(model, net, {algorithm, seed++});
    points += p.size();
  }
  state.counters["points"] = benchmark::Counter(static_cast<double>(points), benchmark::Counter::kAvgIterations);
}
BENCHMARK(BM_SimulateHawkes)->ArgsProduct({{1, 4, 16}, {0, 1}});

void BM_LogLikelihood(benchmark::State& state) {
  const auto net = network(static_cast<double>(state.range(0)));
  const HawkesModel model({1.0, 0.8, 5.0});
  const PointPattern p = simulate(model, net, {Algorithm::inverse, 1});
  for (auto _ : state) benchmark::DoNotOptimize(log_likelihood(model, p));
  state.counters["points"] = static_cast<double>(p.size());
}
BENCHMARK(BM_LogLikelihood)->Arg(1)->Arg(4)->Arg(16);

void BM_ModifiedHawkesLikelihood(benchmark::State& state) {
  const auto net = network(static_cast<double>(state.range(0)));
  const ModifiedHawkesModel model({1.0, 0.8, 5.0});
  const PointPattern p = simulate(model, net, {Algorithm::inverse, 1});
  for (auto _ : state) benchmark::DoNotOptimize(log_likelihood(model, p));
}
BENCHMARK(BM_ModifiedHawkesLikelihood)->Arg(1)->Arg(4);

void BM_FitHawkes(benchmark::State& state) {
  const auto net = network(3.375);
  const HawkesModel model({1.0, 0.8, 5.0});
  const PointPattern p = simulate(model, net, {Algorithm::inverse, 2});
  for (auto _ : state) benchmark::DoNotOptimize(fit_mle(model, p).loglik);
}
BENCHMARK(BM_FitHawkes)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
