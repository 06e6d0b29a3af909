#include "dks/token_graph.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "dks/errors.hpp"
#include "subset_scan.hpp"

namespace dks {

namespace {

// Members of the subset reached by replacing `leave` with `enter`,
// kept sorted. `scratch` is reused across calls to avoid reallocation.
void swapped_members(std::span<const int> members, int leave, int enter,
                     std::vector<int>& scratch) {
  scratch.clear();
  for (int v : members)
    if (v != leave) scratch.push_back(v);
  scratch.insert(std::lower_bound(scratch.begin(), scratch.end(), enter), enter);
}

void check_subset_size(int k, int n) {
  if (k < 1 || k > n - 1)
    throw ValidationError("subset size k=" + std::to_string(k) +
                          " must satisfy 1 <= k <= n-1 with n=" + std::to_string(n));
}

}  // namespace

TokenGraph TokenGraph::build(const Graph& host, int k, std::uint64_t vertex_cap) {
  const int n = host.vertex_count();
  check_subset_size(k, n);
  if (!host.is_connected())
    throw HypothesisError("connected", "host graph is disconnected");

  const std::uint64_t count = binomial(n, k);
  if (count > vertex_cap)
    throw SizeCapError("token graph would have C(" + std::to_string(n) + "," +
                       std::to_string(k) + ") = " + std::to_string(count) +
                       " vertices, above the cap of " + std::to_string(vertex_cap) +
                       "; use the chain sampler instead of explicit construction");

  TokenGraph tg{SubsetCodec(n, k)};
  const std::size_t vcount = static_cast<std::size_t>(count);
  tg.offsets_.assign(vcount + 1, 0);

  std::vector<char> in_subset(static_cast<std::size_t>(n), 0);
  std::vector<int> members(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) members[static_cast<std::size_t>(i)] = i;

  // First pass: the degree of a token vertex is its count of boundary
  // edges, so the rows can be sized without storing an edge list.
  {
    std::size_t idx = 0;
    do {
      std::uint64_t deg = 0;
      for (int v : members)
        for (int w : host.neighbors(v))
          if (!std::binary_search(members.begin(), members.end(), w)) ++deg;
      tg.offsets_[idx + 1] = deg;
      ++idx;
    } while (next_k_subset(members, n));
    assert(idx == vcount);
  }
  for (std::size_t i = 0; i < vcount; ++i) tg.offsets_[i + 1] += tg.offsets_[i];
  tg.adjacency_.resize(static_cast<std::size_t>(tg.offsets_[vcount]));
  tg.edge_count_ = tg.offsets_[vcount] / 2;

  // Second pass: fill each row with the ranks of the swapped subsets.
  for (int i = 0; i < k; ++i) members[static_cast<std::size_t>(i)] = i;
  std::vector<int> scratch;
  scratch.reserve(static_cast<std::size_t>(k));
  {
    std::size_t idx = 0;
    do {
      for (int v : members) in_subset[static_cast<std::size_t>(v)] = 1;
      std::size_t slot = static_cast<std::size_t>(tg.offsets_[idx]);
      for (int v : members)
        for (int w : host.neighbors(v)) {
          if (in_subset[static_cast<std::size_t>(w)]) continue;
          swapped_members(members, v, w, scratch);
          tg.adjacency_[slot++] = static_cast<std::uint32_t>(tg.codec_.rank(scratch));
        }
      assert(slot == static_cast<std::size_t>(tg.offsets_[idx + 1]));
      std::sort(tg.adjacency_.begin() + static_cast<std::ptrdiff_t>(tg.offsets_[idx]),
                tg.adjacency_.begin() + static_cast<std::ptrdiff_t>(tg.offsets_[idx + 1]));
      for (int v : members) in_subset[static_cast<std::size_t>(v)] = 0;
      ++idx;
    } while (next_k_subset(members, n));
  }
  return tg;
}

double TransitionMatrix::probability(std::uint32_t from, std::uint32_t to) const {
  const double denom = static_cast<double>(tg_->degree(from)) + tg_->k();
  if (from == to) return tg_->k() / denom;
  const auto row = tg_->neighbors(from);
  if (std::binary_search(row.begin(), row.end(), to)) return 1.0 / denom;
  return 0.0;
}

Rational TransitionMatrix::probability_exact(std::uint32_t from, std::uint32_t to) const {
  const std::int64_t denom = static_cast<std::int64_t>(tg_->degree(from)) + tg_->k();
  if (from == to) return {tg_->k(), denom};
  const auto row = tg_->neighbors(from);
  if (std::binary_search(row.begin(), row.end(), to)) return {1, denom};
  return {0};
}

void TransitionMatrix::apply_left(std::span<const double> in, std::span<double> out) const {
  const std::size_t dim = static_cast<std::size_t>(dimension());
  if (in.size() != dim || out.size() != dim)
    throw std::invalid_argument("apply_left: vector length does not match dimension");
  std::fill(out.begin(), out.end(), 0.0);
  const int k = tg_->k();
  for (std::size_t v = 0; v < dim; ++v) {
    const auto u = static_cast<std::uint32_t>(v);
    const double share = in[v] / (static_cast<double>(tg_->degree(u)) + k);
    out[v] += share * k;
    for (std::uint32_t w : tg_->neighbors(u)) out[w] += share;
  }
}

double TransitionMatrix::row_sum(std::uint32_t v) const {
  double total = self_probability(v);
  const double denom = static_cast<double>(tg_->degree(v)) + tg_->k();
  for (std::uint32_t w : tg_->neighbors(v)) {
    (void)w;
    total += 1.0 / denom;
  }
  return total;
}

Rational TransitionMatrix::row_sum_exact(std::uint32_t v) const {
  const std::int64_t denom = static_cast<std::int64_t>(tg_->degree(v)) + tg_->k();
  Rational total{tg_->k(), denom};
  for (std::uint32_t w : tg_->neighbors(v)) {
    (void)w;
    total = total + Rational{1, denom};
  }
  return total;
}

StationaryDistribution::StationaryDistribution(const TokenGraph& tg) : tg_(&tg) {
  const auto vcount = static_cast<std::int64_t>(tg.vertex_count());
  normalization_ =
      2 * static_cast<std::int64_t>(tg.edge_count()) + static_cast<std::int64_t>(tg.k()) * vcount;
  weights_.resize(static_cast<std::size_t>(vcount));
  for (std::int64_t v = 0; v < vcount; ++v)
    weights_[static_cast<std::size_t>(v)] =
        (static_cast<double>(tg.degree(static_cast<std::uint32_t>(v))) + tg.k()) /
        static_cast<double>(normalization_);
}

Rational StationaryDistribution::weight_exact(std::uint32_t v) const {
  return {static_cast<std::int64_t>(tg_->degree(v)) + tg_->k(), normalization_};
}

StructuralConstants structural_constants(const Graph& g, int k,
                                         std::uint64_t enumeration_cap) {
  const int n = g.vertex_count();
  check_subset_size(k, n);

  StructuralConstants sc{};
  sc.vertex_count = binomial(n, k);
  const auto d = g.regular_degree();
  constexpr std::uint64_t kSat = std::numeric_limits<std::uint64_t>::max();

  if (d && n >= 2 && sc.vertex_count != kSat) {
    // Token edge count in closed form; the product k(n-k) C(n,k) d is
    // always divisible by 2(n-1).
    __int128 prod = static_cast<__int128>(k) * (n - k);
    prod *= static_cast<__int128>(sc.vertex_count);
    prod *= *d;
    const __int128 denom = 2 * static_cast<__int128>(n - 1);
    assert(prod % denom == 0);
    const __int128 e = prod / denom;
    if (e <= static_cast<__int128>(std::numeric_limits<std::uint64_t>::max())) {
      sc.edge_count = static_cast<std::uint64_t>(e);
      const auto max64 = static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max());
      if (*sc.edge_count <= max64 / 2 && sc.vertex_count <= max64)
        sc.avg_degree = Rational(static_cast<std::int64_t>(2 * *sc.edge_count),
                                 static_cast<std::int64_t>(sc.vertex_count));
    }
    sc.avg_degree_ratio = Rational(*d, n - 1);
  }

  if (sc.vertex_count != kSat && sc.vertex_count <= enumeration_cap) {
    // The token degree of a subset is its boundary edge count: the sum
    // of host degrees over members minus twice the induced edges.
    std::int64_t min_deg = std::numeric_limits<std::int64_t>::max();
    std::int64_t max_deg = 0;
    detail::scan_k_subsets(g, k, [&](std::span<const int> members, std::int64_t induced) {
      std::int64_t deg_sum = 0;
      for (int v : members) deg_sum += g.degree(v);
      const std::int64_t deg = deg_sum - 2 * induced;
      min_deg = std::min(min_deg, deg);
      max_deg = std::max(max_deg, deg);
    });
    sc.min_max_exact = true;
    sc.min_deg_k = static_cast<std::uint64_t>(min_deg);
    sc.max_deg_k = static_cast<std::uint64_t>(max_deg);
    if (g.is_connected()) sc.connectivity = sc.min_deg_k;
  } else {
    sc.min_max_exact = false;
    sc.min_deg_k = d ? static_cast<std::uint64_t>(*d) : (g.is_connected() ? 1 : 0);
    sc.max_deg_k = static_cast<std::uint64_t>(k) * static_cast<std::uint64_t>(n - k);
  }
  return sc;
}

LazinessReport laziness_and_regime(const Graph& g, int k, std::uint64_t enumeration_cap) {
  const int n = g.vertex_count();
  check_subset_size(k, n);
  const auto d = g.regular_degree();
  if (!d)
    throw HypothesisError("regular", "laziness classification requires a regular host graph");

  LazinessReport rep{};
  const Rational threshold{*d - 1};

  // Enumerate over whichever side is smaller: on a regular host the
  // induced edge counts of k-subsets and of their complements differ by
  // the constant |E| - d(n-k).
  const int side = std::min(k, n - k);
  const std::uint64_t side_count = binomial(n, side);
  if (side_count != std::numeric_limits<std::uint64_t>::max() &&
      side_count <= enumeration_cap) {
    std::int64_t min_induced = std::numeric_limits<std::int64_t>::max();
    detail::scan_k_subsets(g, side, [&](std::span<const int>, std::int64_t induced) {
      min_induced = std::min(min_induced, induced);
    });
    if (side != k)
      min_induced += g.edge_count() - static_cast<std::int64_t>(*d) * (n - k);
    const Rational min_avg{2 * min_induced, k};
    rep.min_avg_induced_degree = min_avg;
    rep.min_avg_lower = min_avg;
    rep.min_avg_upper = min_avg;
    rep.is_lazy = !(min_avg < threshold);
  } else {
    // Certified bounds from d <= deg_k <= k(n-k), with no enumeration.
    rep.min_avg_lower = std::max(Rational{0}, Rational{*d - (n - k)});
    rep.min_avg_upper = Rational{static_cast<std::int64_t>(*d) * (k - 1), k};
    if (rep.min_avg_upper < threshold)
      rep.is_lazy = false;
    else if (!(rep.min_avg_lower < threshold))
      rep.is_lazy = true;
  }

  if (rep.is_lazy.has_value())
    rep.regime = *rep.is_lazy ? Regime::lazy_branch : Regime::non_lazy_branch;
  else
    rep.regime = Regime::unresolved;

  if (rep.min_avg_induced_degree) {
    const Rational denom = Rational{*d + 1} - *rep.min_avg_induced_degree;
    rep.gamma = 1.0 / denom.to_double();
  }
  return rep;
}

}  // namespace dks
