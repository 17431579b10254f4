// Serial reference vs OpenMP paths: the per-step chain kernel and the
// replication loop.

#include <benchmark/benchmark.h>

#include "paim/harness.hpp"

namespace {

using namespace paim;

PaimConfig banana_config(std::size_t chains, ExecutionPolicy policy) {
  RandomStream rng(derive_seed(1, stream::init));
  PaimConfig c;
  c.chains = chains;
  c.samples = 5000;
  c.train_steps = 1;
  c.policy = policy;
  c.seed = 1;
  c.init = random_init(Vector{-15, -15}, Vector{15, 15}, 10.0, chains, rng);
  return c;
}

void run_paim_bench(benchmark::State& state, ExecutionPolicy policy) {
  const auto target = make_banana_target();
  const auto config = banana_config(static_cast<std::size_t>(state.range(0)), policy);
  for (auto _ : state) benchmark::DoNotOptimize(run_paim(config, target).samples.size());
  state.SetItemsProcessed(state.iterations() * 5000);
}

void BM_RunPaimSerial(benchmark::State& s) { run_paim_bench(s, ExecutionPolicy::serial); }
void BM_RunPaimParallel(benchmark::State& s) { run_paim_bench(s, ExecutionPolicy::parallel); }
BENCHMARK(BM_RunPaimSerial)->Arg(10)->Arg(100);
BENCHMARK(BM_RunPaimParallel)->Arg(10)->Arg(100);

void advance_bench(benchmark::State& state, ExecutionPolicy policy) {
  const auto target = make_banana_target();
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto config = banana_config(n, policy);
  std::vector<ChainState> chains;
  std::vector<RandomStream> streams;
  std::vector<std::size_t> selected;
  for (std::size_t i = 0; i < n; ++i) {
    chains.push_back(make_chain(i, config.init.states[i], target));
    streams.emplace_back(derive_seed(1, stream::chain, i));
    selected.push_back(i);
  }
  std::vector<MhOutcome> outcomes(n);
  for (auto _ : state)
    advance_chains(chains, selected, config.init.proposals, target, streams, outcomes, policy);
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}

void BM_AdvanceSerial(benchmark::State& s) { advance_bench(s, ExecutionPolicy::serial); }
void BM_AdvanceParallel(benchmark::State& s) { advance_bench(s, ExecutionPolicy::parallel); }
BENCHMARK(BM_AdvanceSerial)->Arg(100)->Arg(10000);
BENCHMARK(BM_AdvanceParallel)->Arg(100)->Arg(10000);

void replicate_bench(benchmark::State& state, ExecutionPolicy policy) {
  ExperimentConfig c;
  c.sampler.chains = 10;
  c.sampler.samples = 5000;
  c.sampler.policy = policy;
  c.replications = 16;
  c.truth.value = Vector{-1.0949, 0.0};
  const auto target = make_banana_target();
  for (auto _ : state) benchmark::DoNotOptimize(replicate(c, target, *c.truth.value).report.paim->mse);
}

void BM_ReplicateSerial(benchmark::State& s) { replicate_bench(s, ExecutionPolicy::serial); }
void BM_ReplicateParallel(benchmark::State& s) { replicate_bench(s, ExecutionPolicy::parallel); }
BENCHMARK(BM_ReplicateSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ReplicateParallel)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
