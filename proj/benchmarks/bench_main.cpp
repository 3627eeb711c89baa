#include <benchmark/benchmark.h>

#include "freeride/engine.hpp"
#include "freeride/presets.hpp"
#include "freeride/rng.hpp"
#include "freeride/theory.hpp"

using namespace freeride;

static void BM_KeyedRngU64(benchmark::State& state) {
  KeyedRng rng(1, StreamKey{0, 1, 1, 1, Draw::Reward});
  for (auto _ : state) benchmark::DoNotOptimize(rng.next_u64());
}
BENCHMARK(BM_KeyedRngU64);

static void BM_KeyedRngGaussian(benchmark::State& state) {
  KeyedRng rng(1, StreamKey{0, 1, 1, 1, Draw::Reward});
  for (auto _ : state) benchmark::DoNotOptimize(rng.next_gaussian());
}
BENCHMARK(BM_KeyedRngGaussian);

static void BM_StochasticReplica(benchmark::State& state) {
  SimulationConfig cfg = make_preset("fig1");
  cfg.horizon = static_cast<std::uint64_t>(state.range(0));
  cfg.replicas = 1;
  for (auto _ : state) benchmark::DoNotOptimize(run_replica(cfg, 0));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_StochasticReplica)->Arg(1000)->Arg(10000);

static void BM_ContextualReplica(benchmark::State& state) {
  SimulationConfig cfg = make_preset("contextual_threshold");
  cfg.horizon = static_cast<std::uint64_t>(state.range(0));
  cfg.replicas = 1;
  for (auto _ : state) benchmark::DoNotOptimize(run_replica(cfg, 0));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ContextualReplica)->Arg(1000)->Arg(10000);

static void BM_KlDiscrete(benchmark::State& state) {
  const DiscretePoints p{{-0.9, -0.3, 0.2, 0.8}, {0.1, 0.4, 0.3, 0.2}};
  const DiscretePoints q{{-0.9, -0.3, 0.2, 0.8}, {0.25, 0.25, 0.25, 0.25}};
  for (auto _ : state) benchmark::DoNotOptimize(kl_discrete(p, q));
}
BENCHMARK(BM_KlDiscrete);

BENCHMARK_MAIN();
