#include <benchmark/benchmark.h>

#include <random>

#include "dks/analysis.hpp"
#include "dks/graph.hpp"
#include "dks/sampler.hpp"

namespace {

dks::Graph host_for(int n, int d) {
  std::mt19937_64 rng(99);
  while (true) {
    dks::Graph g = dks::random_regular_graph(n, d, rng);
    if (g.is_connected()) return g;
  }
}

void BM_ChainStepLoop(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int d = static_cast<int>(state.range(1));
  const dks::Graph g = host_for(n, d);
  dks::ChainState chain(g, n / 4, dks::Dynamics::loop, 7);
  for (auto _ : state) {
    chain.step();
    benchmark::DoNotOptimize(chain.arrow_count());
  }
  state.SetItemsProcessed(state.iterations());
}

void BM_ChainStepClassical(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int d = static_cast<int>(state.range(1));
  const dks::Graph g = host_for(n, d);
  dks::ChainState chain(g, n / 4, dks::Dynamics::classical, 7);
  for (auto _ : state) {
    chain.step();
    benchmark::DoNotOptimize(chain.arrow_count());
  }
  state.SetItemsProcessed(state.iterations());
}

void BM_RunChain(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const dks::Graph g = host_for(n, 3);
  for (auto _ : state) {
    auto stats = dks::run_chain(g, 3, 100, 10000, 5, dks::Dynamics::loop);
    benchmark::DoNotOptimize(stats.total_samples);
  }
  state.SetItemsProcessed(state.iterations() * 10000);
}

}  // namespace

BENCHMARK(BM_ChainStepLoop)->Args({100, 4})->Args({1000, 10})->Args({10000, 10});
BENCHMARK(BM_ChainStepClassical)->Args({100, 4})->Args({1000, 10})->Args({10000, 10});
BENCHMARK(BM_RunChain)->Arg(50)->Arg(500);

BENCHMARK_MAIN();
