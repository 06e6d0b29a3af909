#include "dks/sampler.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "dks/analysis.hpp"
#include "dks/errors.hpp"
#include "dks/subsets.hpp"
#include "dks/token_graph.hpp"

namespace dks {

const char* dynamics_name(Dynamics d) { return d == Dynamics::loop ? "loop" : "classical"; }

std::optional<Dynamics> dynamics_from_name(std::string_view name) {
  if (name == "loop") return Dynamics::loop;
  if (name == "classical") return Dynamics::classical;
  return std::nullopt;
}

BoundaryStructure build_boundary(const Graph& g, const VertexSubset& v, Dynamics dynamics) {
  v.validate_for(g);
  std::vector<char> occupied(static_cast<std::size_t>(g.vertex_count()), 0);
  for (int u : v.members()) occupied[static_cast<std::size_t>(u)] = 1;

  BoundaryStructure b;
  b.dynamics = dynamics;
  for (int u : v.members()) {
    if (dynamics == Dynamics::classical) {
      for (int w : g.neighbors(u)) b.arrows.push_back({u, w});
      continue;
    }
    // The loop arrow targets u itself, so it slots between the
    // neighbors below u and those above it.
    bool loop_emitted = false;
    for (int w : g.neighbors(u)) {
      if (!loop_emitted && u < w) {
        b.arrows.push_back({u, u});
        loop_emitted = true;
      }
      if (!occupied[static_cast<std::size_t>(w)]) b.arrows.push_back({u, w});
    }
    if (!loop_emitted) b.arrows.push_back({u, u});
  }
  assert(std::is_sorted(b.arrows.begin(), b.arrows.end()));
  return b;
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_below: bound must be positive");
  if ((bound & (bound - 1)) == 0) return rng() & (bound - 1);
  const int bits = std::bit_width(bound);
  const std::uint64_t mask =
      bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
  for (;;) {
    const std::uint64_t r = rng() & mask;
    if (r < bound) return r;
  }
}

std::vector<int> draw_uniform_subset(int n, int k, std::mt19937_64& rng) {
  if (k < 1 || k > n)
    throw ValidationError("cannot draw a " + std::to_string(k) + "-subset of " +
                          std::to_string(n) + " vertices");
  std::vector<int> members;
  members.reserve(static_cast<std::size_t>(k));
  const std::uint64_t total = binomial(n, k);
  if (total != std::numeric_limits<std::uint64_t>::max()) {
    // Unrank a uniform index through the combinatorial number system.
    std::uint64_t r = uniform_below(rng, total);
    int a = 0;
    for (int remaining = k; remaining > 0; --remaining) {
      for (;;) {
        const std::uint64_t block = binomial(n - 1 - a, remaining - 1);
        if (r < block) {
          members.push_back(a);
          ++a;
          break;
        }
        r -= block;
        ++a;
      }
    }
    return members;
  }
  // Subset count exceeds 64 bits; Floyd's sampling is still uniform and
  // needs only k bounded draws.
  std::vector<char> chosen(static_cast<std::size_t>(n), 0);
  for (int j = n - k; j < n; ++j) {
    const int t = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(j) + 1));
    if (chosen[static_cast<std::size_t>(t)])
      chosen[static_cast<std::size_t>(j)] = 1;
    else
      chosen[static_cast<std::size_t>(t)] = 1;
  }
  for (int v = 0; v < n; ++v)
    if (chosen[static_cast<std::size_t>(v)]) members.push_back(v);
  return members;
}

namespace detail {

ArrowCounts::ArrowCounts(int n)
    : size_(n),
      top_(n > 0 ? static_cast<int>(std::bit_floor(static_cast<unsigned>(n))) : 0),
      tree_(static_cast<std::size_t>(n) + 1, 0),
      values_(static_cast<std::size_t>(n), 0) {}

void ArrowCounts::add(int v, std::int64_t delta) {
  values_[static_cast<std::size_t>(v)] += static_cast<std::uint64_t>(delta);
  total_ += static_cast<std::uint64_t>(delta);
  for (int i = v + 1; i <= size_; i += i & -i)
    tree_[static_cast<std::size_t>(i)] += static_cast<std::uint64_t>(delta);
}

void ArrowCounts::set(int v, std::uint64_t weight) {
  add(v, static_cast<std::int64_t>(weight) -
             static_cast<std::int64_t>(values_[static_cast<std::size_t>(v)]));
}

std::pair<int, std::uint64_t> ArrowCounts::select(std::uint64_t r) const {
  assert(r < total_);
  int pos = 0;
  std::uint64_t rem = r;
  for (int pw = top_; pw > 0; pw >>= 1) {
    const int next = pos + pw;
    if (next <= size_ && tree_[static_cast<std::size_t>(next)] <= rem) {
      pos = next;
      rem -= tree_[static_cast<std::size_t>(next)];
    }
  }
  return {pos, rem};
}

}  // namespace detail

ChainState::ChainState(const Graph& g, VertexSubset initial, Dynamics dynamics,
                       std::uint64_t seed)
    : g_(&g), dynamics_(dynamics), rng_(seed), counts_(g.vertex_count()) {
  initial.validate_for(g);
  attach(initial.member_vector());
}

ChainState::ChainState(const Graph& g, int k, Dynamics dynamics, std::uint64_t seed)
    : g_(&g), dynamics_(dynamics), rng_(seed), counts_(g.vertex_count()) {
  if (k < 1 || k > g.vertex_count() - 1)
    throw ValidationError("subset size k=" + std::to_string(k) +
                          " must satisfy 1 <= k <= n-1 with n=" +
                          std::to_string(g.vertex_count()));
  attach(draw_uniform_subset(g.vertex_count(), k, rng_));
}

void ChainState::attach(std::vector<int> members) {
  members_ = std::move(members);
  occupied_.assign(static_cast<std::size_t>(g_->vertex_count()), 0);
  for (int v : members_) occupied_[static_cast<std::size_t>(v)] = 1;
  for (int v : members_) counts_.set(v, weight_of(v));
}

std::uint64_t ChainState::weight_of(int v) const {
  if (dynamics_ == Dynamics::classical)
    return static_cast<std::uint64_t>(g_->degree(v));
  std::uint64_t w = 1;  // the loop arrow
  for (int x : g_->neighbors(v))
    if (!occupied_[static_cast<std::size_t>(x)]) ++w;
  return w;
}

void ChainState::step() {
  const std::uint64_t r = uniform_below(rng_, counts_.total());
  const auto [v, offset] = counts_.select(r);
  if (dynamics_ == Dynamics::classical) {
    const int target = g_->neighbors(v)[offset];
    if (!occupied_[static_cast<std::size_t>(target)]) move(v, target);
    ++step_count_;
    return;
  }
  // Resolve the offset against the same target order build_boundary
  // uses: unoccupied neighbors ascending, with v in numeric position.
  int target = -1;
  std::uint64_t rem = offset;
  bool loop_passed = false;
  for (int w : g_->neighbors(v)) {
    if (!loop_passed && v < w) {
      if (rem == 0) {
        target = v;
        break;
      }
      --rem;
      loop_passed = true;
    }
    if (!occupied_[static_cast<std::size_t>(w)]) {
      if (rem == 0) {
        target = w;
        break;
      }
      --rem;
    }
  }
  if (target == -1) {
    assert(rem == 0);
    target = v;
  }
  if (target != v) move(v, target);
  ++step_count_;
}

void ChainState::move(int leave, int enter) {
  members_.erase(std::lower_bound(members_.begin(), members_.end(), leave));
  members_.insert(std::lower_bound(members_.begin(), members_.end(), enter), enter);

  if (dynamics_ == Dynamics::classical) {
    occupied_[static_cast<std::size_t>(leave)] = 0;
    occupied_[static_cast<std::size_t>(enter)] = 1;
    counts_.set(leave, 0);
    counts_.set(enter, static_cast<std::uint64_t>(g_->degree(enter)));
    return;
  }

  occupied_[static_cast<std::size_t>(leave)] = 0;
  counts_.set(leave, 0);
  for (int u : g_->neighbors(leave))
    if (occupied_[static_cast<std::size_t>(u)]) counts_.add(u, 1);

  occupied_[static_cast<std::size_t>(enter)] = 1;
  counts_.set(enter, weight_of(enter));
  for (int u : g_->neighbors(enter))
    if (occupied_[static_cast<std::size_t>(u)] && u != enter) counts_.add(u, -1);
}

void SampleStatistics::merge(const SampleStatistics& other) {
  if (k != other.k || dynamics != other.dynamics ||
      host_vertex_count != other.host_vertex_count ||
      host_edge_count != other.host_edge_count)
    throw ValidationError("cannot merge sample statistics from different chain setups");
  for (const auto& [members, c] : other.counts) counts[members] += c;
  total_samples += other.total_samples;
  seeds.insert(seeds.end(), other.seeds.begin(), other.seeds.end());
  std::sort(seeds.begin(), seeds.end());
  seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());
  burn_in = std::max(burn_in, other.burn_in);
}

SampleStatistics run_chain(const Graph& g, int k, std::uint64_t burn_in, std::uint64_t m,
                           std::uint64_t seed, Dynamics dynamics,
                           const std::optional<VertexSubset>& initial) {
  const int n = g.vertex_count();
  if (k < 1 || k > n - 1)
    throw ValidationError("subset size k=" + std::to_string(k) +
                          " must satisfy 1 <= k <= n-1 with n=" + std::to_string(n));
  if (!g.is_connected())
    throw HypothesisError("connected", "chain host graph is disconnected");
  if (initial && initial->k() != k)
    throw ValidationError("initial subset has size " + std::to_string(initial->k()) +
                          ", expected k=" + std::to_string(k));

  ChainState chain = initial ? ChainState(g, *initial, dynamics, seed)
                             : ChainState(g, k, dynamics, seed);
  for (std::uint64_t t = 0; t < burn_in; ++t) chain.step();

  SampleStatistics stats;
  stats.seeds = {seed};
  stats.burn_in = burn_in;
  stats.dynamics = dynamics;
  stats.k = k;
  stats.host_vertex_count = n;
  stats.host_edge_count = g.edge_count();
  stats.total_samples = m;
  std::vector<int> key;
  for (std::uint64_t t = 0; t < m; ++t) {
    chain.step();
    key.assign(chain.members().begin(), chain.members().end());
    ++stats.counts[key];
  }
  return stats;
}

std::optional<std::uint64_t> default_burn_in(const Graph& g, int k) {
  const auto d = g.regular_degree();
  if (!d || *d < 1 || g.vertex_count() < 2) return std::nullopt;
  if (laziness_and_regime(g, k).regime == Regime::unresolved) return std::nullopt;
  const MixingBounds mb = mixing_bounds(g.vertex_count(), *d, k, 0.1);
  if (!(mb.threshold_non_lazy < 1e8)) return std::nullopt;
  return static_cast<std::uint64_t>(std::ceil(mb.threshold_non_lazy));
}

DensestReport sample_densest(const Graph& g, int k, std::optional<std::uint64_t> burn_in,
                             std::uint64_t m, std::uint64_t seed) {
  const int n = g.vertex_count();
  if (k < 1 || k > n - 1)
    throw ValidationError("subset size k=" + std::to_string(k) +
                          " must satisfy 1 <= k <= n-1 with n=" + std::to_string(n));
  if (!g.regular_degree())
    throw HypothesisError("regular", "input graph is not regular");
  if (!g.is_connected()) throw HypothesisError("connected", "input graph is disconnected");
  if (!g.complement_is_connected())
    throw HypothesisError("complement_connected",
                          "complement of the input graph is disconnected");

  const Graph comp = g.complement();
  DensestReport rep;
  if (burn_in) {
    rep.burn_in = *burn_in;
  } else {
    const auto def = default_burn_in(comp, k);
    if (!def)
      throw ValidationError(
          "no default burn-in is available for this instance (regime unresolved or "
          "threshold above 10^8); pass burn_in explicitly");
    rep.burn_in = *def;
    rep.burn_in_defaulted = true;
  }
  rep.statistics = run_chain(comp, k, rep.burn_in, m, seed, Dynamics::loop);

  rep.ranking.reserve(rep.statistics.counts.size());
  for (const auto& [members, count] : rep.statistics.counts) {
    RankedSubset r;
    r.members = members;
    r.count = count;
    r.edge_count = induced_edge_count(g, members);
    r.density = Rational(r.edge_count, k);
    rep.ranking.push_back(std::move(r));
  }
  std::stable_sort(rep.ranking.begin(), rep.ranking.end(),
                   [](const RankedSubset& a, const RankedSubset& b) {
                     if (a.count != b.count) return a.count > b.count;
                     return a.members < b.members;
                   });
  return rep;
}

}  // namespace dks
