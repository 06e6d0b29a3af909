#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "dks/graph.hpp"
#include "dks/sampler.hpp"
#include "dks/subsets.hpp"
#include "dks/token_graph.hpp"

namespace dks {

// Worst-case mixing thresholds for the loop-dynamics chain on a
// d-regular n-vertex host. The non-lazy threshold controls pointwise
// relative error; the lazy threshold controls total variation, carries
// an unspecified leading constant, and can come out non-positive for
// small n and large d (reported raw, flagged vacuous by callers).
struct MixingBounds {
  double rho = 0.0;
  double xi = 0.0;
  double epsilon = 0.0;
  double threshold_non_lazy = 0.0;
  double threshold_lazy = 0.0;
  double lazy_constant = 1.0;
};

MixingBounds mixing_bounds(int n, int d, int k, double epsilon, double lazy_constant = 1.0);

// Exhaustive densest-k ground truth at desk scale.
struct OracleResult {
  std::vector<std::vector<int>> optimal_subsets;  // lexicographic
  std::int64_t optimum = 0;
  std::uint64_t evaluated = 0;
};

inline constexpr std::uint64_t kDefaultOracleCap = 10'000'000;

OracleResult brute_force_densest(const Graph& g, int k,
                                 std::uint64_t enumeration_cap = kDefaultOracleCap);

// Row `initial` of the t-step transition matrix, by repeated sparse
// multiplication. Dimension must stay within the dense-vector cap.
std::vector<double> exact_chain_distribution(const TransitionMatrix& tm, std::uint64_t t,
                                             std::uint32_t initial,
                                             std::uint64_t dense_cap = kDefaultDenseCap);

struct DistanceReport {
  double tv = 0.0;
  double max_relative = 0.0;
};

// tv = half the l1 distance; max_relative = max |p-q|/q over states.
// q must be strictly positive everywhere (the stationary law is).
DistanceReport distribution_distance(std::span<const double> p, std::span<const double> q);
DistanceReport distribution_distance(const SampleStatistics& stats, const SubsetCodec& codec,
                                     std::span<const double> q);

// Empirical frequencies as a dense vector over codec ranks.
std::vector<double> empirical_distribution(const SampleStatistics& stats,
                                           const SubsetCodec& codec);

// Random d-regular simple graph via the pairing model with rejection.
// Requires n*d even, 0 < d < n. Seeded through the caller's generator.
Graph random_regular_graph(int n, int d, std::mt19937_64& rng, int max_attempts = 10'000);

}  // namespace dks
