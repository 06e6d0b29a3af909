#include <benchmark/benchmark.h>

#include <random>

#include "dks/analysis.hpp"
#include "dks/graph.hpp"
#include "dks/token_graph.hpp"

namespace {

dks::Graph host_for(int n, int d) {
  std::mt19937_64 rng(1234);
  while (true) {
    dks::Graph g = dks::random_regular_graph(n, d, rng);
    if (g.is_connected()) return g;
  }
}

void BM_TokenGraphBuild(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int k = static_cast<int>(state.range(1));
  const dks::Graph g = host_for(n, 3);
  for (auto _ : state) {
    auto tg = dks::TokenGraph::build(g, k);
    benchmark::DoNotOptimize(tg.edge_count());
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(dks::binomial(n, k)));
}

void BM_StationaryDistribution(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int k = static_cast<int>(state.range(1));
  const dks::Graph g = host_for(n, 3);
  const dks::TokenGraph tg = dks::TokenGraph::build(g, k);
  for (auto _ : state) {
    dks::StationaryDistribution pi(tg);
    benchmark::DoNotOptimize(pi.weights().data());
  }
}

void BM_StructuralConstants(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int k = static_cast<int>(state.range(1));
  const dks::Graph g = host_for(n, 3);
  for (auto _ : state) {
    auto sc = dks::structural_constants(g, k);
    benchmark::DoNotOptimize(sc.min_deg_k);
  }
}

}  // namespace

BENCHMARK(BM_TokenGraphBuild)->Args({12, 3})->Args({16, 4})->Args({20, 4})->Args({24, 5});
BENCHMARK(BM_StationaryDistribution)->Args({16, 4})->Args({20, 4});
BENCHMARK(BM_StructuralConstants)->Args({16, 4})->Args({20, 4});
