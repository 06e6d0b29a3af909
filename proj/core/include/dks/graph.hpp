#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dks/rational.hpp"

namespace dks {

/// Simple undirected graph on vertices 0..n-1. Immutable after construction;
/// edges are stored with the smaller endpoint first and sorted, adjacency
/// lists are sorted ascending. Safe to share read-only across threads.
class Graph {
 public:
  /// Validates and canonicalizes: rejects self-loops and out-of-range
  /// endpoints, deduplicates parallel edges.
  Graph(int n, std::vector<std::pair<int, int>> edges);

  /// Reads the edge-list text format: one "u v" pair per line, 0-based ids,
  /// lines whose first non-blank character is '#' are comments, blank lines
  /// ignored. The graph is on 0..max_id. Throws ParseError (with line number)
  /// on malformed lines, ValidationError on self-loops or empty input.
  static Graph parse_edge_list(std::istream& in);
  static Graph parse_edge_list(const std::string& text);

  int vertex_count() const noexcept { return n_; }
  std::int64_t edge_count() const noexcept { return static_cast<std::int64_t>(edges_.size()); }
  std::span<const std::pair<int, int>> edges() const noexcept { return edges_; }

  std::span<const int> neighbors(int v) const { return adjacency_[static_cast<std::size_t>(v)]; }
  int degree(int v) const { return static_cast<int>(adjacency_[static_cast<std::size_t>(v)].size()); }
  bool has_edge(int u, int v) const;

  /// The common degree when the graph is regular, nullopt otherwise.
  std::optional<int> regular_degree() const;

  bool is_connected() const;

  /// Connectivity of the complement, computed by a BFS over the unvisited set
  /// so the complement is never materialized.
  bool complement_is_connected() const;

  /// Complement graph: same vertices, edge present iff absent here.
  Graph complement() const;

  /// Serializes in the same edge-list format parse_edge_list reads.
  std::string to_edge_list() const;

 private:
  int n_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> adjacency_;
};

/// A k-subset of a graph's vertices, kept strictly increasing.
class VertexSubset {
 public:
  /// Sorts and validates: members must be distinct and nonnegative.
  explicit VertexSubset(std::vector<int> members);

  int k() const noexcept { return static_cast<int>(members_.size()); }
  std::span<const int> members() const noexcept { return members_; }
  const std::vector<int>& member_vector() const noexcept { return members_; }

  /// Checks membership in 0..n-1 of `g` and 1 <= k <= n-1.
  void validate_for(const Graph& g) const;

 private:
  std::vector<int> members_;
};

struct ConnectivityReport {
  bool is_regular;
  std::optional<int> degree;
  bool is_connected;
  bool complement_connected;
};

ConnectivityReport regularity_and_connectivity(const Graph& g);

struct InducedStats {
  std::int64_t edge_count;  // |E_v|
  Rational density;         // |E_v| / k
  Rational avg_degree;      // 2 |E_v| / k
};

/// Edge count, density and average degree of the subgraph induced by `v`.
InducedStats induced_stats(const Graph& g, const VertexSubset& v);

/// Number of edges of `g` with both endpoints in the sorted set `members`.
std::int64_t induced_edge_count(const Graph& g, std::span<const int> members);

}  // namespace dks
