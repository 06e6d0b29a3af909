#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "dks/graph.hpp"
#include "dks/rational.hpp"

namespace dks {

enum class Dynamics { loop, classical };

const char* dynamics_name(Dynamics d);
std::optional<Dynamics> dynamics_from_name(std::string_view name);

// One oriented move option for the current subset. A loop arrow
// (source == target) keeps the subset in place.
struct Arrow {
  int source = 0;
  int target = 0;
  bool is_loop() const { return source == target; }
  friend bool operator==(const Arrow&, const Arrow&) = default;
  friend auto operator<=>(const Arrow&, const Arrow&) = default;
};

// The full move set for a subset, sorted by (source, target) so a
// seeded uniform index identifies one arrow reproducibly.
//
// loop dynamics: one arrow per oriented boundary edge plus one loop per
// occupied vertex.
// classical dynamics: one arrow per oriented boundary edge plus two
// arrows per induced edge (moves onto occupied targets are no-ops).
struct BoundaryStructure {
  Dynamics dynamics = Dynamics::loop;
  std::vector<Arrow> arrows;
};

BoundaryStructure build_boundary(const Graph& g, const VertexSubset& v, Dynamics dynamics);

// Unbiased integer in [0, bound) from the generator, by rejection over
// the smallest covering power-of-two range. bound must be positive.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);

// Uniformly random k-subset of 0..n-1, consuming draws from rng.
std::vector<int> draw_uniform_subset(int n, int k, std::mt19937_64& rng);

namespace detail {

// Fenwick tree holding the per-vertex arrow counts of the current
// subset, so one uniform index can be mapped to (source, offset) in
// O(log n) and a swap touches only O(max degree) entries.
class ArrowCounts {
 public:
  explicit ArrowCounts(int n);
  void set(int v, std::uint64_t weight);
  void add(int v, std::int64_t delta);
  std::uint64_t value(int v) const { return values_[static_cast<std::size_t>(v)]; }
  std::uint64_t total() const { return total_; }
  // Smallest v with prefix_sum(0..v) > r, plus r minus the preceding
  // prefix sum. Requires r < total().
  std::pair<int, std::uint64_t> select(std::uint64_t r) const;

 private:
  int size_;
  int top_;
  std::uint64_t total_ = 0;
  std::vector<std::uint64_t> tree_;
  std::vector<std::uint64_t> values_;
};

}  // namespace detail

// A running chain. The graph must outlive the state. Each step consumes
// exactly one bounded uniform draw, mapped through the same sorted arrow
// order that build_boundary exposes.
class ChainState {
 public:
  ChainState(const Graph& g, VertexSubset initial, Dynamics dynamics, std::uint64_t seed);
  // Draws the initial subset uniformly from the chain's own stream, so a
  // run is reproducible from the seed alone.
  ChainState(const Graph& g, int k, Dynamics dynamics, std::uint64_t seed);

  const Graph& graph() const { return *g_; }
  Dynamics dynamics() const { return dynamics_; }
  int k() const { return static_cast<int>(members_.size()); }
  std::uint64_t step_count() const { return step_count_; }
  std::span<const int> members() const { return members_; }
  bool contains(int v) const { return occupied_[static_cast<std::size_t>(v)] != 0; }
  std::uint64_t arrow_count() const { return counts_.total(); }

  void step();

 private:
  void attach(std::vector<int> members);
  std::uint64_t weight_of(int v) const;
  void move(int leave, int enter);

  const Graph* g_;
  Dynamics dynamics_;
  std::mt19937_64 rng_;
  std::uint64_t step_count_ = 0;
  std::vector<int> members_;
  std::vector<char> occupied_;
  detail::ArrowCounts counts_;
};

// Visit frequencies of the recorded states, keyed by subset members.
struct SampleStatistics {
  std::map<std::vector<int>, std::uint64_t> counts;
  std::uint64_t total_samples = 0;
  std::vector<std::uint64_t> seeds;  // sorted, unique
  std::uint64_t burn_in = 0;
  Dynamics dynamics = Dynamics::loop;
  int k = 0;
  int host_vertex_count = 0;
  std::int64_t host_edge_count = 0;

  // Combines runs over the same host/k/dynamics; associative and
  // order-independent (burn_in keeps the largest value seen).
  void merge(const SampleStatistics& other);
};

SampleStatistics run_chain(const Graph& g, int k, std::uint64_t burn_in, std::uint64_t m,
                           std::uint64_t seed, Dynamics dynamics,
                           const std::optional<VertexSubset>& initial = std::nullopt);

struct RankedSubset {
  std::vector<int> members;
  std::uint64_t count = 0;
  std::int64_t edge_count = 0;  // induced edges in the input graph
  Rational density{0};
};

struct DensestReport {
  SampleStatistics statistics;        // chain ran on the complement
  std::vector<RankedSubset> ranking;  // count descending, then members ascending
  std::uint64_t burn_in = 0;
  bool burn_in_defaulted = false;
};

// The default burn-in: ceiling of the non-lazy mixing threshold at
// epsilon = 0.1 for the chain's own host, when the laziness regime is
// resolved and the value stays below 10^8. Absent otherwise.
std::optional<std::uint64_t> default_burn_in(const Graph& g, int k);

// Runs the loop-dynamics chain on the complement of g and ranks visited
// subsets by frequency; dense subgraphs of g surface at the top. g must
// be regular and connected with a connected complement.
DensestReport sample_densest(const Graph& g, int k, std::optional<std::uint64_t> burn_in,
                             std::uint64_t m, std::uint64_t seed);

}  // namespace dks
