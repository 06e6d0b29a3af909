#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

#include "dks/graph.hpp"
#include "dks/subsets.hpp"

namespace dks::detail {

// Adjacency as bitset rows, for O(k * n/64) induced-edge counts during
// subset scans. Only built for hosts small enough that the rows fit
// comfortably; larger hosts fall back to pairwise has_edge tests.
class AdjacencyBits {
 public:
  explicit AdjacencyBits(const Graph& g)
      : n_(g.vertex_count()),
        words_(static_cast<std::size_t>((n_ + 63) / 64)),
        rows_(static_cast<std::size_t>(n_) * words_, 0) {
    for (const auto& [u, v] : g.edges()) {
      set_bit(u, v);
      set_bit(v, u);
    }
  }

  std::int64_t induced_edges(std::span<const int> members) const {
    std::vector<std::uint64_t> mask(words_, 0);
    for (int v : members)
      mask[static_cast<std::size_t>(v) / 64] |= std::uint64_t{1} << (v % 64);
    std::int64_t twice = 0;
    for (int v : members) {
      const std::uint64_t* row = rows_.data() + static_cast<std::size_t>(v) * words_;
      for (std::size_t w = 0; w < words_; ++w)
        twice += std::popcount(row[w] & mask[w]);
    }
    return twice / 2;
  }

 private:
  void set_bit(int u, int v) {
    rows_[static_cast<std::size_t>(u) * words_ + static_cast<std::size_t>(v) / 64] |=
        std::uint64_t{1} << (v % 64);
  }

  int n_;
  std::size_t words_;
  std::vector<std::uint64_t> rows_;
};

// Calls fn(members, induced_edge_count) for every k-subset of 0..n-1 in
// lexicographic order.
template <class F>
void scan_k_subsets(const Graph& g, int k, F&& fn) {
  const int n = g.vertex_count();
  std::vector<int> members(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) members[static_cast<std::size_t>(i)] = i;
  if (n <= 4096) {
    AdjacencyBits bits(g);
    do {
      fn(members, bits.induced_edges(members));
    } while (next_k_subset(members, n));
  } else {
    do {
      fn(members, induced_edge_count(g, members));
    } while (next_k_subset(members, n));
  }
}

}  // namespace dks::detail
