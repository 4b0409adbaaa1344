#include <benchmark/benchmark.h>

#include <algorithm>
#include <functional>
#include <vector>

#include "evstat/dist.hpp"
#include "evstat/evt.hpp"
#include "evstat/logdim.hpp"
#include "evstat/mech.hpp"
#include "evstat/random.hpp"
#include "evstat/tree.hpp"

namespace {

using namespace evstat;

void BM_ParetoSample(benchmark::State& state) {
  DistSpec spec = DistSpec::pareto(static_cast<double>(state.range(0)) / 2.0);
  RandomSource rng(1, 0);
  const std::size_t n = 65536;
  for (auto _ : state) {
    TailSample batch = sample(spec, n, rng);
    benchmark::DoNotOptimize(batch.values.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * n);
}
BENCHMARK(BM_ParetoSample)->Arg(1)->Arg(2)->Arg(4)->Arg(3);

void BM_LogNormalSample(benchmark::State& state) {
  DistSpec spec = DistSpec::log_normal(0.0, 1.0);
  RandomSource rng(1, 0);
  const std::size_t n = 65536;
  for (auto _ : state) {
    TailSample batch = sample(spec, n, rng);
    benchmark::DoNotOptimize(batch.values.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * n);
}
BENCHMARK(BM_LogNormalSample);

void BM_LogdimSum(benchmark::State& state) {
  RandomSource rng(2, 0);
  std::vector<LogDim> dims;
  for (int i = 0; i < state.range(0); ++i)
    dims.push_back(LogDim::from_log2(rng.next_unit() * 1e6));
  for (auto _ : state) {
    LogDim s = logdim_sum(dims);
    benchmark::DoNotOptimize(s);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_LogdimSum)->Arg(1024)->Arg(65536);

void BM_DominanceFraction(benchmark::State& state) {
  RandomSource rng(3, 0);
  TailSample batch = sample(DistSpec::pareto(1.0), static_cast<std::size_t>(state.range(0)), rng);
  std::sort(batch.values.begin(), batch.values.end(), std::greater<>());
  for (auto _ : state) {
    LogDim f = dominance_fraction(batch.values);
    benchmark::DoNotOptimize(f);
  }
}
BENCHMARK(BM_DominanceFraction)->Arg(1024)->Arg(65536);

void BM_HillEstimator(benchmark::State& state) {
  RandomSource rng(4, 0);
  TailSample batch = sample(DistSpec::pareto(2.0), 1000000, rng);
  for (auto _ : state) {
    TailEstimate est = hill_estimator(batch.values, static_cast<std::size_t>(state.range(0)));
    benchmark::DoNotOptimize(est);
  }
}
BENCHMARK(BM_HillEstimator)->Arg(1000)->Arg(10000);

void BM_GrowAssignTree(benchmark::State& state) {
  DistSpec spec = DistSpec::pareto(1.0);
  for (auto _ : state) {
    BranchTree tree = grow_tree(2, static_cast<std::uint32_t>(state.range(0)));
    RandomSource rng(5, 0);
    assign_draws(tree, DrawMode::final_draw(), spec, rng);
    benchmark::DoNotOptimize(tree.node_values.data());
  }
}
BENCHMARK(BM_GrowAssignTree)->Arg(10)->Arg(14);

void BM_GaltonWatsonProgeny(benchmark::State& state) {
  RandomSource rng(6, 0);
  for (auto _ : state) {
    ProgenyResult res = gw_total_progeny(1.0, rng);
    benchmark::DoNotOptimize(res);
  }
}
BENCHMARK(BM_GaltonWatsonProgeny);

void BM_PrefAttachDegrees(benchmark::State& state) {
  for (auto _ : state) {
    RandomSource rng(7, 0);
    auto deg = pref_attach_degrees(static_cast<std::size_t>(state.range(0)), 1, rng);
    benchmark::DoNotOptimize(deg.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_PrefAttachDegrees)->Arg(10000)->Arg(100000);

}  // namespace
