#include "dks/graph.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "dks/errors.hpp"

namespace dks {

Graph::Graph(int n, std::vector<std::pair<int, int>> edges) : n_(n) {
  if (n < 1) throw ValidationError("graph needs at least one vertex");
  for (auto& [u, v] : edges) {
    if (u == v) throw ValidationError("self-loop at vertex " + std::to_string(u));
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw ValidationError("edge endpoint out of range: " + std::to_string(u) + " " +
                            std::to_string(v));
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  edges_ = std::move(edges);

  adjacency_.assign(static_cast<std::size_t>(n_), {});
  for (const auto& [u, v] : edges_) {
    adjacency_[static_cast<std::size_t>(u)].push_back(v);
    adjacency_[static_cast<std::size_t>(v)].push_back(u);
  }
  for (auto& list : adjacency_) std::sort(list.begin(), list.end());
}

Graph Graph::parse_edge_list(std::istream& in) {
  std::vector<std::pair<int, int>> edges;
  int max_id = -1;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;

    std::istringstream fields(line);
    long long u = -1;
    long long v = -1;
    std::string trailing;
    if (!(fields >> u >> v) || (fields >> trailing))
      throw ParseError("expected two integers, got \"" + line + "\"", line_no);
    if (u < 0 || v < 0)
      throw ParseError("negative vertex id in \"" + line + "\"", line_no);
    if (u == v)
      throw ValidationError("self-loop " + std::to_string(u) + " " + std::to_string(v) +
                            " at line " + std::to_string(line_no));
    edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
    max_id = std::max<long long>({max_id, u, v});
  }
  if (max_id < 0) throw ValidationError("edge list holds no edges");
  return Graph(max_id + 1, std::move(edges));
}

Graph Graph::parse_edge_list(const std::string& text) {
  std::istringstream in(text);
  return parse_edge_list(in);
}

bool Graph::has_edge(int u, int v) const {
  if (u == v) return false;
  const auto& list = adjacency_[static_cast<std::size_t>(u)];
  return std::binary_search(list.begin(), list.end(), v);
}

std::optional<int> Graph::regular_degree() const {
  const int d = degree(0);
  for (int v = 1; v < n_; ++v)
    if (degree(v) != d) return std::nullopt;
  return d;
}

bool Graph::is_connected() const {
  std::vector<char> seen(static_cast<std::size_t>(n_), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int w : neighbors(v)) {
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  return reached == n_;
}

bool Graph::complement_is_connected() const {
  // BFS over the complement: keep the not-yet-visited vertices in a pool and,
  // for each popped vertex, absorb every pool member it is NOT adjacent to.
  // Each pool scan either visits a vertex or charges an edge of this graph,
  // so the complement never has to be built.
  std::vector<int> pool;
  pool.reserve(static_cast<std::size_t>(n_) - 1);
  for (int v = 1; v < n_; ++v) pool.push_back(v);

  std::vector<int> queue{0};
  while (!queue.empty() && !pool.empty()) {
    const int v = queue.back();
    queue.pop_back();
    std::vector<int> kept;
    kept.reserve(pool.size());
    for (int u : pool) {
      if (has_edge(v, u))
        kept.push_back(u);  // adjacent here, not a complement edge
      else
        queue.push_back(u);
    }
    pool.swap(kept);
  }
  return pool.empty();
}

Graph Graph::complement() const {
  std::vector<std::pair<int, int>> comp_edges;
  for (int u = 0; u < n_; ++u) {
    const auto& list = adjacency_[static_cast<std::size_t>(u)];
    std::size_t i = 0;
    for (int v = u + 1; v < n_; ++v) {
      while (i < list.size() && list[i] < v) ++i;
      if (i < list.size() && list[i] == v) continue;
      comp_edges.emplace_back(u, v);
    }
  }
  return Graph(n_, std::move(comp_edges));
}

std::string Graph::to_edge_list() const {
  std::ostringstream out;
  for (const auto& [u, v] : edges_) out << u << " " << v << "\n";
  return out.str();
}

VertexSubset::VertexSubset(std::vector<int> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  if (std::adjacent_find(members_.begin(), members_.end()) != members_.end())
    throw ValidationError("subset members must be distinct");
  if (!members_.empty() && members_.front() < 0)
    throw ValidationError("subset members must be nonnegative");
}

void VertexSubset::validate_for(const Graph& g) const {
  const int n = g.vertex_count();
  if (k() < 1 || k() > n - 1)
    throw ValidationError("subset size " + std::to_string(k()) + " outside 1.." +
                          std::to_string(n - 1));
  if (members_.back() >= n)
    throw ValidationError("subset member " + std::to_string(members_.back()) +
                          " outside 0.." + std::to_string(n - 1));
}

ConnectivityReport regularity_and_connectivity(const Graph& g) {
  ConnectivityReport report;
  report.degree = g.regular_degree();
  report.is_regular = report.degree.has_value();
  report.is_connected = g.is_connected();
  report.complement_connected = g.complement_is_connected();
  return report;
}

std::int64_t induced_edge_count(const Graph& g, std::span<const int> members) {
  std::int64_t count = 0;
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j)
      if (g.has_edge(members[i], members[j])) ++count;
  return count;
}

InducedStats induced_stats(const Graph& g, const VertexSubset& v) {
  v.validate_for(g);
  const std::int64_t edges = induced_edge_count(g, v.members());
  return InducedStats{edges, Rational(edges, v.k()), Rational(2 * edges, v.k())};
}

}  // namespace dks
