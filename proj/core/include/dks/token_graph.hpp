#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dks/graph.hpp"
#include "dks/rational.hpp"
#include "dks/subsets.hpp"

namespace dks {

/// Default cap on explicit token-graph construction, in token vertices.
inline constexpr std::uint64_t kDefaultConstructionCap = 1'000'000;

/// Default cap for dense-matrix style work (matrix powers, full dumps).
inline constexpr std::uint64_t kDefaultDenseCap = 10'000;

/// Explicit token graph of a host graph: vertices are the k-subsets of the
/// host's vertex set in lexicographic order, two subsets adjacent iff their
/// symmetric difference is a host edge. Immutable after build.
class TokenGraph {
 public:
  /// Requires a connected host and 1 <= k <= n-1. Throws SizeCapError when
  /// C(n,k) exceeds `vertex_cap` (the walk-based sampler handles that scale).
  static TokenGraph build(const Graph& host, int k,
                          std::uint64_t vertex_cap = kDefaultConstructionCap);

  std::uint64_t vertex_count() const noexcept { return codec_.count(); }
  std::uint64_t edge_count() const noexcept { return edge_count_; }
  int k() const noexcept { return codec_.k(); }
  int host_vertex_count() const noexcept { return codec_.n(); }

  std::span<const std::uint32_t> neighbors(std::uint32_t index) const {
    return {adjacency_.data() + offsets_[index], adjacency_.data() + offsets_[index + 1]};
  }
  std::uint32_t degree(std::uint32_t index) const {
    return static_cast<std::uint32_t>(offsets_[index + 1] - offsets_[index]);
  }

  std::vector<int> subset_of(std::uint32_t index) const { return codec_.unrank(index); }
  std::uint32_t index_of(std::span<const int> members) const {
    return static_cast<std::uint32_t>(codec_.rank(members));
  }

  const SubsetCodec& codec() const noexcept { return codec_; }

 private:
  TokenGraph(SubsetCodec codec) : codec_(std::move(codec)) {}

  SubsetCodec codec_;
  std::vector<std::uint64_t> offsets_;    // CSR offsets, size vertex_count()+1
  std::vector<std::uint32_t> adjacency_;  // CSR neighbor indices, sorted per row
  std::uint64_t edge_count_ = 0;
};

/// Row-stochastic transition matrix of the loop-augmented walk on a token
/// graph: probability 1/(deg+k) to each neighbor, k/(deg+k) to stay. A sparse
/// view over the TokenGraph, which must outlive it.
class TransitionMatrix {
 public:
  explicit TransitionMatrix(const TokenGraph& tg) : tg_(&tg) {}

  std::uint64_t dimension() const noexcept { return tg_->vertex_count(); }
  const TokenGraph& token_graph() const noexcept { return *tg_; }

  double probability(std::uint32_t from, std::uint32_t to) const;
  Rational probability_exact(std::uint32_t from, std::uint32_t to) const;

  double self_probability(std::uint32_t v) const {
    const double k = tg_->k();
    return k / (tg_->degree(v) + k);
  }

  /// out = in * P (left multiplication by a row vector).
  void apply_left(std::span<const double> in, std::span<double> out) const;

  double row_sum(std::uint32_t v) const;
  Rational row_sum_exact(std::uint32_t v) const;

 private:
  const TokenGraph* tg_;
};

/// Stationary distribution of the loop-augmented walk: weight of a subset is
/// (deg+k) / (2|edges| + k*|vertices|), exposed both as doubles and exactly.
class StationaryDistribution {
 public:
  explicit StationaryDistribution(const TokenGraph& tg);

  std::span<const double> weights() const noexcept { return weights_; }
  double weight(std::uint32_t v) const { return weights_[v]; }
  Rational weight_exact(std::uint32_t v) const;
  std::int64_t normalization() const noexcept { return normalization_; }

 private:
  const TokenGraph* tg_;
  std::int64_t normalization_;
  std::vector<double> weights_;
};

/// Closed-form and enumerated structure of a token graph, computable without
/// building it. Formula-backed fields require a regular host and are absent
/// otherwise; min/max token degrees fall back to the a-priori bounds
/// [d, k(n-k)] when C(n,k) exceeds `enumeration_cap`.
struct StructuralConstants {
  std::uint64_t vertex_count;                 // C(n,k)
  std::optional<std::uint64_t> edge_count;    // k(n-k) C(n,k) d / (2(n-1)), regular only
  std::optional<Rational> avg_degree;         // 2|E_k| / C(n,k), regular only
  std::optional<Rational> avg_degree_ratio;   // d/(n-1), regular only
  bool min_max_exact;                         // true when enumerated
  std::uint64_t min_deg_k;                    // exact, or lower bound d
  std::uint64_t max_deg_k;                    // exact, or upper bound k(n-k)
  std::optional<std::uint64_t> connectivity;  // vertex connectivity = min deg, when exact
};

StructuralConstants structural_constants(const Graph& g, int k,
                                         std::uint64_t enumeration_cap = kDefaultConstructionCap);

enum class Regime { non_lazy_branch, lazy_branch, unresolved };

/// Laziness dichotomy of the loop-augmented walk. The walk is lazy iff the
/// minimum average induced degree over k-subsets reaches d-1; that minimum is
/// a sparsest-k-subgraph problem, so it is found by exhaustive enumeration
/// under the cap. Above the cap the regime is still reported when the
/// certified bounds alone decide it, and unresolved otherwise.
struct LazinessReport {
  std::optional<Rational> min_avg_induced_degree;  // exact value when enumerated
  Rational min_avg_lower;                          // certified bounds, always valid
  Rational min_avg_upper;
  std::optional<bool> is_lazy;
  Regime regime;
  std::optional<double> gamma;  // 1 / (d + 1 - min_avg), when exact
};

/// Requires a regular host (throws HypothesisError otherwise).
LazinessReport laziness_and_regime(const Graph& g, int k,
                                   std::uint64_t enumeration_cap = kDefaultConstructionCap);

}  // namespace dks
