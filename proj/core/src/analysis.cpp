#include "dks/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>
#include <string>

#include "dks/errors.hpp"
#include "subset_scan.hpp"

namespace dks {

MixingBounds mixing_bounds(int n, int d, int k, double epsilon, double lazy_constant) {
  if (n < 2) throw ValidationError("mixing bounds require n >= 2");
  if (k < 1 || k > n - 1)
    throw ValidationError("mixing bounds require 1 <= k <= n-1, got k=" + std::to_string(k));
  if (d < 1) throw ValidationError("mixing bounds require d >= 1");
  if (!(epsilon > 0.0) || !(epsilon < 1.0))
    throw ValidationError("epsilon must lie strictly between 0 and 1");

  MixingBounds mb;
  mb.epsilon = epsilon;
  mb.lazy_constant = lazy_constant;
  const double n1 = n - 1.0;
  const double d4 = std::pow(static_cast<double>(d), 4.0);
  mb.rho = 4.0 * n1 * n1 * static_cast<double>(n - k) * static_cast<double>(n - k) / d4;
  const double log_binom =
      std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
  mb.xi = log_binom +
          std::log(static_cast<double>(k) * (n - k) / n1 + static_cast<double>(k) / d);
  mb.threshold_non_lazy = 1.0 + mb.rho * (std::log(4.0 / epsilon) + mb.xi);
  mb.threshold_lazy = lazy_constant * std::log2(1.0 / epsilon) * (mb.xi - n1 * n1 / d4);
  return mb;
}

OracleResult brute_force_densest(const Graph& g, int k, std::uint64_t enumeration_cap) {
  const int n = g.vertex_count();
  if (k < 1 || k > n)
    throw ValidationError("subset size k=" + std::to_string(k) +
                          " must satisfy 1 <= k <= n with n=" + std::to_string(n));
  const std::uint64_t count = binomial(n, k);
  if (count == std::numeric_limits<std::uint64_t>::max() || count > enumeration_cap)
    throw SizeCapError("exhaustive search over C(" + std::to_string(n) + "," +
                       std::to_string(k) + ") subsets exceeds the cap of " +
                       std::to_string(enumeration_cap));

  OracleResult res;
  std::int64_t best = -1;
  detail::scan_k_subsets(g, k, [&](std::span<const int> members, std::int64_t induced) {
    ++res.evaluated;
    if (induced > best) {
      best = induced;
      res.optimal_subsets.clear();
    }
    if (induced == best) res.optimal_subsets.emplace_back(members.begin(), members.end());
  });
  res.optimum = best;
  return res;
}

std::vector<double> exact_chain_distribution(const TransitionMatrix& tm, std::uint64_t t,
                                             std::uint32_t initial, std::uint64_t dense_cap) {
  const std::uint64_t dim = tm.dimension();
  if (dim > dense_cap)
    throw SizeCapError("dense distribution over " + std::to_string(dim) +
                       " states exceeds the cap of " + std::to_string(dense_cap));
  if (initial >= dim) throw ValidationError("initial state index out of range");
  std::vector<double> p(static_cast<std::size_t>(dim), 0.0);
  std::vector<double> q(static_cast<std::size_t>(dim), 0.0);
  p[initial] = 1.0;
  for (std::uint64_t s = 0; s < t; ++s) {
    tm.apply_left(p, q);
    std::swap(p, q);
  }
  return p;
}

DistanceReport distribution_distance(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size())
    throw ValidationError("distributions have different support sizes");
  DistanceReport rep;
  double l1 = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!(q[i] > 0.0))
      throw ValidationError(
          "reference distribution has a zero entry; pointwise relative error undefined");
    const double diff = std::abs(p[i] - q[i]);
    l1 += diff;
    rep.max_relative = std::max(rep.max_relative, diff / q[i]);
  }
  rep.tv = 0.5 * l1;
  return rep;
}

std::vector<double> empirical_distribution(const SampleStatistics& stats,
                                           const SubsetCodec& codec) {
  if (stats.total_samples == 0)
    throw ValidationError("sample statistics hold no samples");
  if (codec.k() != stats.k || codec.n() != stats.host_vertex_count)
    throw ValidationError("subset codec does not match the sampled subsets");
  std::vector<double> p(static_cast<std::size_t>(codec.count()), 0.0);
  for (const auto& [members, c] : stats.counts)
    p[static_cast<std::size_t>(codec.rank(members))] +=
        static_cast<double>(c) / static_cast<double>(stats.total_samples);
  return p;
}

DistanceReport distribution_distance(const SampleStatistics& stats, const SubsetCodec& codec,
                                     std::span<const double> q) {
  const std::vector<double> p = empirical_distribution(stats, codec);
  return distribution_distance(p, q);
}

Graph random_regular_graph(int n, int d, std::mt19937_64& rng, int max_attempts) {
  if (n < 2 || d < 1 || d >= n || (static_cast<std::int64_t>(n) * d) % 2 != 0)
    throw ValidationError("pairing model requires 2 <= n, 1 <= d < n, and n*d even");

  std::vector<int> stubs(static_cast<std::size_t>(n) * static_cast<std::size_t>(d));
  for (std::size_t i = 0; i < stubs.size(); ++i)
    stubs[i] = static_cast<int>(i) / d;

  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    // Fisher-Yates with bounded draws, so results do not depend on the
    // standard library's shuffle implementation.
    for (std::size_t i = stubs.size() - 1; i > 0; --i) {
      const std::size_t j = static_cast<std::size_t>(uniform_below(rng, i + 1));
      std::swap(stubs[i], stubs[j]);
    }
    std::vector<std::pair<int, int>> edges;
    edges.reserve(stubs.size() / 2);
    std::set<std::pair<int, int>> seen;
    bool simple = true;
    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
      int u = stubs[i];
      int v = stubs[i + 1];
      if (u == v) {
        simple = false;
        break;
      }
      if (u > v) std::swap(u, v);
      if (!seen.insert({u, v}).second) {
        simple = false;
        break;
      }
      edges.emplace_back(u, v);
    }
    if (simple) return Graph(n, std::move(edges));
  }
  throw ValidationError("pairing model produced no simple graph within " +
                        std::to_string(max_attempts) + " attempts");
}

}  // namespace dks
