#include "fixtures.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <set>
#include <stdexcept>
#include <utility>

#include <boost/math/distributions/chi_squared.hpp>

namespace testsupport {

using dks::Graph;

Graph demo_host() {
  return Graph(6, {{0, 3}, {0, 4}, {1, 3}, {2, 5}, {2, 4}, {0, 1}, {1, 2}, {3, 5}, {4, 5}});
}

Graph cycle_graph(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  return Graph(n, std::move(edges));
}

Graph complete_graph(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  return Graph(n, std::move(edges));
}

Graph complete_bipartite(int a, int b) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j) edges.emplace_back(i, a + j);
  return Graph(a + b, std::move(edges));
}

Graph petersen_graph() {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < 5; ++i) {
    edges.emplace_back(i, (i + 1) % 5);          // outer pentagon
    edges.emplace_back(5 + i, 5 + (i + 2) % 5);  // inner pentagram
    edges.emplace_back(i, 5 + i);                // spokes
  }
  return Graph(10, std::move(edges));
}

Graph circulant_graph(int n, const std::vector<int>& jumps) {
  std::set<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) {
    for (int j : jumps) {
      int u = i;
      int v = (i + j) % n;
      if (u == v) continue;
      edges.insert({std::min(u, v), std::max(u, v)});
    }
  }
  return Graph(n, {edges.begin(), edges.end()});
}

Graph cocktail_party_graph(int m) {
  const int n = 2 * m;
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (j - i != m) edges.emplace_back(i, j);  // i and i+m are the non-adjacent pair
  return Graph(n, std::move(edges));
}

namespace {

// Dinic max-flow on a unit-capacity split-vertex network.
class MaxFlow {
 public:
  explicit MaxFlow(int nodes) : head_(nodes, -1), level_(nodes), iter_(nodes) {}

  void add_edge(int from, int to, int capacity) {
    edges_.push_back({to, head_[from], capacity});
    head_[from] = static_cast<int>(edges_.size()) - 1;
    edges_.push_back({from, head_[to], 0});
    head_[to] = static_cast<int>(edges_.size()) - 1;
  }

  int run(int source, int sink) {
    int flow = 0;
    while (bfs(source, sink)) {
      iter_ = head_;
      while (int pushed = dfs(source, sink, std::numeric_limits<int>::max())) flow += pushed;
    }
    return flow;
  }

 private:
  struct Edge {
    int to;
    int next;
    int cap;
  };

  bool bfs(int source, int sink) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<int> q;
    level_[source] = 0;
    q.push(source);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int e = head_[v]; e != -1; e = edges_[e].next) {
        if (edges_[e].cap > 0 && level_[edges_[e].to] < 0) {
          level_[edges_[e].to] = level_[v] + 1;
          q.push(edges_[e].to);
        }
      }
    }
    return level_[sink] >= 0;
  }

  int dfs(int v, int sink, int limit) {
    if (v == sink) return limit;
    for (int& e = iter_[v]; e != -1; e = edges_[e].next) {
      Edge& edge = edges_[e];
      if (edge.cap <= 0 || level_[edge.to] != level_[v] + 1) continue;
      int pushed = dfs(edge.to, sink, std::min(limit, edge.cap));
      if (pushed > 0) {
        edge.cap -= pushed;
        edges_[e ^ 1].cap += pushed;
        return pushed;
      }
    }
    return 0;
  }

  std::vector<int> head_;
  std::vector<int> level_;
  std::vector<int> iter_;
  std::vector<Edge> edges_;
};

// Minimum number of vertices whose removal separates non-adjacent s and t.
int local_connectivity(const Graph& g, int s, int t) {
  const int n = g.vertex_count();
  // Node 2v = in-copy, 2v+1 = out-copy; interior vertices get capacity 1.
  MaxFlow flow(2 * n);
  const int big = n + 1;
  for (int v = 0; v < n; ++v) flow.add_edge(2 * v, 2 * v + 1, v == s || v == t ? big : 1);
  for (const auto& [u, v] : g.edges()) {
    flow.add_edge(2 * u + 1, 2 * v, big);
    flow.add_edge(2 * v + 1, 2 * u, big);
  }
  return flow.run(2 * s + 1, 2 * t);
}

}  // namespace

int vertex_connectivity(const Graph& g) {
  const int n = g.vertex_count();
  if (n <= 1) return 0;
  int best = n - 1;
  bool found_pair = false;
  for (int s = 0; s < n; ++s) {
    for (int t = s + 1; t < n; ++t) {
      if (g.has_edge(s, t)) continue;
      found_pair = true;
      best = std::min(best, local_connectivity(g, s, t));
      if (best == 0) return 0;
    }
  }
  return found_pair ? best : n - 1;
}

std::vector<std::vector<double>> classical_transition_matrix(const Graph& g,
                                                             const dks::TokenGraph& tg) {
  const auto dim = static_cast<std::size_t>(tg.vertex_count());
  std::vector<std::vector<double>> matrix(dim, std::vector<double>(dim, 0.0));
  for (std::uint32_t v = 0; v < dim; ++v) {
    const auto members = tg.subset_of(v);
    std::uint64_t arrows = 0;
    for (int u : members) arrows += static_cast<std::uint64_t>(g.degree(u));
    const double share = 1.0 / static_cast<double>(arrows);
    for (int u : members) {
      for (int w : g.neighbors(u)) {
        if (std::binary_search(members.begin(), members.end(), w)) {
          matrix[v][v] += share;  // internal arrow, the walk stays
        } else {
          auto moved = members;
          *std::find(moved.begin(), moved.end(), u) = w;
          std::sort(moved.begin(), moved.end());
          matrix[v][tg.index_of(moved)] += share;
        }
      }
    }
  }
  return matrix;
}

std::vector<double> power_iteration_fixed_point(const dks::TransitionMatrix& tm, double tol,
                                                int max_iterations) {
  const auto dim = static_cast<std::size_t>(tm.dimension());
  std::vector<double> current(dim, 1.0 / static_cast<double>(dim));
  std::vector<double> next(dim, 0.0);
  for (int iteration = 0; iteration < max_iterations; ++iteration) {
    tm.apply_left(current, next);
    double change = 0.0;
    for (std::size_t i = 0; i < dim; ++i) change = std::max(change, std::abs(next[i] - current[i]));
    current.swap(next);
    if (change < tol) return current;
  }
  throw std::runtime_error("power iteration did not settle within the iteration budget");
}

double chi_square_quantile(int df, double probability) {
  boost::math::chi_squared dist(df);
  return boost::math::quantile(dist, probability);
}

}  // namespace testsupport
