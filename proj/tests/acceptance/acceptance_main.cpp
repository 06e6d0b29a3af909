// Acceptance gate for the densest-k sampling library. Each criterion
// prints exactly one [PASS]/[FAIL] line; the exit code is nonzero when
// any selected criterion fails. Run with --criterion N for one check,
// without arguments for the full battery.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "dks/analysis.hpp"
#include "dks/errors.hpp"
#include "dks/graph.hpp"
#include "dks/rational.hpp"
#include "dks/sampler.hpp"
#include "dks/subsets.hpp"
#include "dks/token_graph.hpp"
#include "families.hpp"
#include "fixtures.hpp"
#include "json.hpp"

using dks::Graph;
using dks::Rational;
using dks::StationaryDistribution;
using dks::TokenGraph;
using dks::TransitionMatrix;

namespace {

struct Outcome {
  bool ok = true;
  std::string summary;
};

// The instance family behind the stationary-law and reversibility
// checks: every connected regular isomorphism class through n = 8,
// plus 20 seeded random cubic hosts on 6 and 8 vertices.
std::vector<Graph> law_family() {
  std::vector<Graph> hosts;
  for (int n = 2; n <= 8; ++n)
    for (auto& g : testsupport::connected_regular_classes(n)) hosts.push_back(std::move(g));
  for (int n : {6, 8})
    for (auto& g : testsupport::random_connected_regular(n, 3, 10, 9000 + n))
      hosts.push_back(std::move(g));
  return hosts;
}

Graph token_graph_as_graph(const TokenGraph& tg) {
  std::vector<std::pair<int, int>> edges;
  const auto count = static_cast<std::uint32_t>(tg.vertex_count());
  for (std::uint32_t v = 0; v < count; ++v)
    for (std::uint32_t w : tg.neighbors(v))
      if (w > v) edges.emplace_back(static_cast<int>(v), static_cast<int>(w));
  return Graph(static_cast<int>(count), std::move(edges));
}

// Exact check that pi is a fixed point: the incoming probability mass
// of every state must reproduce its weight, all in rational arithmetic.
bool exact_fixed_point(const TokenGraph& tg) {
  const TransitionMatrix tm(tg);
  const StationaryDistribution pi(tg);
  const auto count = static_cast<std::uint32_t>(tg.vertex_count());
  for (std::uint32_t v = 0; v < count; ++v) {
    Rational incoming = pi.weight_exact(v) * tm.probability_exact(v, v);
    for (std::uint32_t u : tg.neighbors(v))
      incoming += pi.weight_exact(u) * tm.probability_exact(u, v);
    if (incoming != pi.weight_exact(v)) return false;
  }
  return true;
}

Outcome criterion_stationary_closed_form() {
  const auto hosts = law_family();
  int instances = 0;
  double worst = 0.0;
  for (const auto& g : hosts) {
    for (int k = 1; k < g.vertex_count(); ++k) {
      const TokenGraph tg = TokenGraph::build(g, k);
      const TransitionMatrix tm(tg);
      const StationaryDistribution closed(tg);
      const auto iterated = testsupport::power_iteration_fixed_point(tm);
      for (std::uint32_t v = 0; v < tg.vertex_count(); ++v)
        worst = std::max(worst, std::abs(closed.weight(v) - iterated[v]));
      if (worst > 1e-10)
        return {false, "closed form drifted " + std::to_string(worst) +
                           " from power iteration on a " + std::to_string(g.vertex_count()) +
                           "-vertex host, k=" + std::to_string(k)};
      if (!exact_fixed_point(tg))
        return {false, "rational fixed-point identity failed on a " +
                           std::to_string(g.vertex_count()) + "-vertex host, k=" +
                           std::to_string(k)};
      ++instances;
    }
  }
  std::ostringstream s;
  s << hosts.size() << " hosts, " << instances << " (host,k) instances, max deviation " << worst;
  return {true, s.str()};
}

Outcome criterion_detailed_balance() {
  const auto hosts = law_family();
  int instances = 0;
  double worst = 0.0;
  for (const auto& g : hosts) {
    for (int k = 1; k < g.vertex_count(); ++k) {
      const TokenGraph tg = TokenGraph::build(g, k);
      const TransitionMatrix tm(tg);
      const StationaryDistribution pi(tg);
      for (std::uint32_t v = 0; v < tg.vertex_count(); ++v) {
        for (std::uint32_t w : tg.neighbors(v)) {
          const double forward = pi.weight(v) * tm.probability(v, w);
          const double backward = pi.weight(w) * tm.probability(w, v);
          worst = std::max(worst, std::abs(forward - backward));
          if (worst > 1e-12)
            return {false, "flow imbalance " + std::to_string(worst) + " on a " +
                               std::to_string(g.vertex_count()) + "-vertex host, k=" +
                               std::to_string(k)};
          if (pi.weight_exact(v) * tm.probability_exact(v, w) !=
              pi.weight_exact(w) * tm.probability_exact(w, v))
            return {false, "exact reversibility failed, n=" +
                               std::to_string(g.vertex_count()) + " k=" + std::to_string(k)};
        }
      }
      ++instances;
    }
  }
  std::ostringstream s;
  s << instances << " instances, max |pi(v)p(v,w) - pi(w)p(w,v)| = " << worst;
  return {true, s.str()};
}

Outcome criterion_counting_identities() {
  // Exhaustive over every connected regular isomorphism class through
  // n = 10. The per-size class counts are frozen against the published
  // sequence for connected regular graphs (A005177), so a generator gap
  // cannot silently shrink the family.
  const int expected_classes[] = {0, 0, 1, 1, 2, 2, 5, 4, 17, 22, 167};
  std::vector<Graph> hosts;
  for (int n = 2; n <= 10; ++n) {
    auto classes = testsupport::connected_regular_classes(n);
    if (static_cast<int>(classes.size()) != expected_classes[n])
      return {false, "family generator found " + std::to_string(classes.size()) +
                         " classes at n=" + std::to_string(n) + ", expected " +
                         std::to_string(expected_classes[n])};
    for (auto& g : classes) hosts.push_back(std::move(g));
  }
  int instances = 0;
  for (const auto& g : hosts) {
    const int n = g.vertex_count();
    const int d = *g.regular_degree();
    for (int k = 1; k < n; ++k) {
      const TokenGraph tg = TokenGraph::build(g, k);
      const auto sc = dks::structural_constants(g, k);
      if (!sc.edge_count || *sc.edge_count != tg.edge_count())
        return {false, "edge-count closed form mismatch, n=" + std::to_string(n) +
                           " d=" + std::to_string(d) + " k=" + std::to_string(k)};
      if (!sc.avg_degree_ratio || *sc.avg_degree_ratio != Rational(d, n - 1))
        return {false, "average-degree ratio mismatch, n=" + std::to_string(n) +
                           " k=" + std::to_string(k)};
      // Proposition-level identity from the explicit enumeration:
      // 2 E (n-1) = d k (n-k) C(n,k).
      const auto lhs = static_cast<unsigned __int128>(2) * tg.edge_count() *
                       static_cast<unsigned __int128>(n - 1);
      const auto rhs = static_cast<unsigned __int128>(d) * static_cast<unsigned __int128>(k) *
                       static_cast<unsigned __int128>(n - k) * tg.vertex_count();
      if (lhs != rhs)
        return {false, "enumerated average degree violates the ratio identity, n=" +
                           std::to_string(n) + " k=" + std::to_string(k)};
      for (std::uint32_t v = 0; v < tg.vertex_count(); ++v) {
        const auto members = tg.subset_of(v);
        const std::int64_t expected =
            static_cast<std::int64_t>(k) * d - 2 * dks::induced_edge_count(g, members);
        if (static_cast<std::int64_t>(tg.degree(v)) != expected)
          return {false, "token degree identity failed at state " + std::to_string(v) +
                             ", n=" + std::to_string(n) + " k=" + std::to_string(k)};
      }
      ++instances;
    }
  }
  std::ostringstream s;
  s << hosts.size() << " hosts through n=10, " << instances << " (host,k) instances";
  return {true, s.str()};
}

Outcome criterion_token_connectivity() {
  // The connectivity-equals-minimum-degree law is checked over the hosts
  // the sampler actually operates on: connected regular graphs whose
  // complement is also connected. Outside that class it genuinely fails
  // at k = 1, where the token graph is the host itself and a regular
  // graph can be less connected than its degree (the complement of
  // C3+C4 on 7 vertices is 4-regular with a 3-vertex cut).
  int instances = 0;
  int host_count = 0;
  for (int n = 2; n <= 7; ++n) {
    for (const auto& g : testsupport::connected_regular_classes(n)) {
      if (!g.complement_is_connected()) continue;
      ++host_count;
      for (int k = 1; k <= 3 && k < n; ++k) {
        const TokenGraph tg = TokenGraph::build(g, k);
        std::uint32_t min_deg = UINT32_MAX;
        for (std::uint32_t v = 0; v < tg.vertex_count(); ++v)
          min_deg = std::min(min_deg, tg.degree(v));
        const int kappa = testsupport::vertex_connectivity(token_graph_as_graph(tg));
        if (kappa != static_cast<int>(min_deg))
          return {false, "connectivity " + std::to_string(kappa) + " != min degree " +
                             std::to_string(min_deg) + ", n=" + std::to_string(n) +
                             " k=" + std::to_string(k)};
        ++instances;
      }
    }
  }
  return {true, std::to_string(instances) + " token graphs over " + std::to_string(host_count) +
                    " hosts with both sides connected, max-flow connectivity = min degree"};
}

Outcome criterion_empirical_convergence() {
  const Graph hexagon = testsupport::cycle_graph(6);
  const TokenGraph tg = TokenGraph::build(hexagon, 2);
  const StationaryDistribution pi(tg);

  // The stationary tiers on the hexagon pair walk.
  for (std::uint32_t v = 0; v < tg.vertex_count(); ++v) {
    const auto members = tg.subset_of(v);
    const Rational expected =
        hexagon.has_edge(members[0], members[1]) ? Rational(2, 39) : Rational(1, 13);
    if (pi.weight_exact(v) != expected)
      return {false, "stationary tier value off at state " + std::to_string(v)};
  }

  const auto stats = dks::run_chain(hexagon, 2, 1000, 100000, 20260817, dks::Dynamics::loop);
  const std::vector<double> pi_vec(pi.weights().begin(), pi.weights().end());
  const auto dist = dks::distribution_distance(stats, tg.codec(), pi_vec);
  std::ostringstream s;
  s << "tv = " << dist.tv << " after 1e5 samples (tier weights 2/39 and 1/13)";
  return {dist.tv <= 0.05, s.str()};
}

Outcome criterion_classical_uniformity() {
  const Graph demo = testsupport::demo_host();
  const dks::SubsetCodec codec(6, 2);
  const auto stats = dks::run_chain(demo, 2, 1000, 100000, 8675309, dks::Dynamics::classical);
  const std::vector<double> uniform(15, 1.0 / 15.0);
  const auto dist = dks::distribution_distance(stats, codec, uniform);
  std::ostringstream s;
  s << "tv to uniform(15) = " << dist.tv << " after 1e5 classical samples";
  return {dist.tv <= 0.05, s.str()};
}

Outcome criterion_threshold_certification() {
  const auto mb = dks::mixing_bounds(6, 2, 2, 0.1);
  const auto steps = static_cast<std::uint64_t>(std::ceil(mb.threshold_non_lazy));
  if (steps != 737)
    return {false, "threshold rounded to " + std::to_string(steps) + ", expected 737"};

  const Graph hexagon = testsupport::cycle_graph(6);
  const TokenGraph tg = TokenGraph::build(hexagon, 2);
  const TransitionMatrix tm(tg);
  const StationaryDistribution pi(tg);
  const std::vector<double> pi_vec(pi.weights().begin(), pi.weights().end());

  double worst = 0.0;
  for (std::uint32_t start = 0; start < tg.vertex_count(); ++start) {
    const auto at_t = dks::exact_chain_distribution(tm, steps, start);
    const auto dist = dks::distribution_distance(at_t, pi_vec);
    worst = std::max(worst, dist.max_relative);
  }
  std::ostringstream s;
  s << "max pointwise relative error " << worst << " at t=737 over all 15 starts";
  return {worst <= 0.1, s.str()};
}

// The retrieval rate is limited by the resolution of the stationary law
// itself: on a cubic 12-vertex host the weight of a triangle state exceeds
// a two-edge state only by the factor 27/25, and roughly 36 two-edge
// states compete against a handful of triangles. With 1e5 recorded steps
// the count noise (about +-25 before autocorrelation inflates it) swamps
// that 8% gap often enough that even sampling the stationary law directly
// tops out near 91/100 on this trial protocol.
Outcome criterion_densest_retrieval() {
  int trials = 0;
  int successes = 0;
  std::ostringstream per_size;
  for (const int n : {6, 8, 10, 12}) {
    int size_successes = 0;
    int size_trials = 0;
    for (int t = 0; t < 25; ++t) {
      std::mt19937_64 host_rng(424200ULL + 100ULL * static_cast<std::uint64_t>(n) +
                               static_cast<std::uint64_t>(t));
      const Graph g = testsupport::random_host_with_connected_complement(n, 3, host_rng);
      const auto oracle = dks::brute_force_densest(g, 3);
      const auto report = dks::sample_densest(
          g, 3, std::nullopt, 100000,
          515000ULL + 31ULL * static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(t));
      ++trials;
      ++size_trials;
      if (report.ranking.empty()) continue;
      const std::uint64_t top_count = report.ranking[0].count;
      bool hit = false;
      for (const auto& entry : report.ranking) {
        if (entry.count != top_count) break;
        if (std::binary_search(oracle.optimal_subsets.begin(), oracle.optimal_subsets.end(),
                               entry.members)) {
          hit = true;
          break;
        }
      }
      successes += hit ? 1 : 0;
      size_successes += hit ? 1 : 0;
    }
    per_size << (n == 6 ? "" : ", ") << "n=" << n << ": " << size_successes << "/" << size_trials;
  }
  std::ostringstream s;
  s << successes << "/" << trials << " trials retrieved a brute-force optimum in the top tier ("
    << per_size.str() << ")";
  return {successes >= 95, s.str()};
}

Outcome criterion_laziness_dichotomy() {
  // Complete graphs at k = n-1 sit exactly on the lazy boundary.
  for (int n = 2; n <= 8; ++n) {
    const auto report = dks::laziness_and_regime(testsupport::complete_graph(n), n - 1);
    if (report.is_lazy != std::optional<bool>(true))
      return {false, "K_" + std::to_string(n) + " at k=n-1 not classified lazy"};
  }

  int instances = 0;
  int independent_cases = 0;
  for (int n = 2; n <= 8; ++n) {
    for (const auto& g : testsupport::connected_regular_classes(n)) {
      const int d = *g.regular_degree();
      for (int k = 1; k < n; ++k) {
        const auto report = dks::laziness_and_regime(g, k);
        if (!report.is_lazy || !report.min_avg_induced_degree)
          return {false, "classification left unresolved at desk scale, n=" +
                             std::to_string(n) + " k=" + std::to_string(k)};

        // Direct check on the explicit matrix: lazy means every state
        // holds with probability at least 1/2.
        const TokenGraph tg = TokenGraph::build(g, k);
        const TransitionMatrix tm(tg);
        double min_self = 1.0;
        for (std::uint32_t v = 0; v < tg.vertex_count(); ++v)
          min_self = std::min(min_self, tm.self_probability(v));
        const bool lazy_by_matrix = min_self >= 0.5;
        if (lazy_by_matrix != *report.is_lazy)
          return {false, "criterion disagrees with the explicit matrix, n=" +
                             std::to_string(n) + " d=" + std::to_string(d) +
                             " k=" + std::to_string(k)};

        // An independent k-set forces the non-lazy side once d >= 2
        // (at d = 1 the threshold d-1 = 0 is met by every subset).
        if (d >= 2 && *report.min_avg_induced_degree == Rational(0)) {
          ++independent_cases;
          if (*report.is_lazy)
            return {false, "independent k-set classified lazy, n=" + std::to_string(n) +
                               " d=" + std::to_string(d) + " k=" + std::to_string(k)};
        }
        ++instances;
      }
    }
  }
  std::ostringstream s;
  s << instances << " classifications agree with the matrix, " << independent_cases
    << " independent-set instances forced non-lazy";
  return {true, s.str()};
}

Outcome criterion_determinism() {
  const Graph demo = testsupport::demo_host();

  // Identical seeds must reproduce the exact state path.
  dks::ChainState a(demo, 3, dks::Dynamics::loop, 99);
  dks::ChainState b(demo, 3, dks::Dynamics::loop, 99);
  for (int t = 0; t < 3000; ++t) {
    a.step();
    b.step();
    if (!std::equal(a.members().begin(), a.members().end(), b.members().begin(),
                    b.members().end()))
      return {false, "state paths diverged at step " + std::to_string(t)};
  }

  const auto run1 = dks::run_chain(demo, 3, 200, 20000, 424242, dks::Dynamics::loop);
  const auto run2 = dks::run_chain(demo, 3, 200, 20000, 424242, dks::Dynamics::loop);
  if (run1.counts != run2.counts) return {false, "repeated runs yielded different counts"};

  // Full report determinism modulo the generated_at stamp.
  const auto tmp = std::filesystem::temp_directory_path() / "dks_acceptance_host.edges";
  {
    std::ofstream f(tmp);
    f << demo.to_edge_list();
  }
  const std::vector<std::string> args = {"sample", "--input", tmp.string(), "--k", "3",
                                         "--samples", "20000", "--seed", "5"};
  std::ostringstream out1, out2, err;
  const int code1 = dks::cli::run_cli(args, out1, err);
  const int code2 = dks::cli::run_cli(args, out2, err);
  std::filesystem::remove(tmp);
  if (code1 != 0 || code2 != 0) return {false, "sample subcommand failed"};
  auto j1 = nlohmann::json::parse(out1.str());
  auto j2 = nlohmann::json::parse(out2.str());
  j1["provenance"].erase("generated_at");
  j2["provenance"].erase("generated_at");
  if (j1.dump() != j2.dump()) return {false, "reports differ beyond the timestamp"};

  return {true, "state paths, visit counts and reports identical across repeated runs"};
}

struct Criterion {
  int index;
  const char* label;
  Outcome (*run)();
};

const Criterion kCriteria[] = {
    {1, "stationary law equals the power-iteration fixed point", criterion_stationary_closed_form},
    {2, "detailed balance holds entrywise", criterion_detailed_balance},
    {3, "counting identities match exhaustive enumeration", criterion_counting_identities},
    {4, "token connectivity equals the minimum degree", criterion_token_connectivity},
    {5, "empirical law converges on the hexagon pair walk", criterion_empirical_convergence},
    {6, "classical dynamics is uniform on the demo host", criterion_classical_uniformity},
    {7, "certified threshold bounds the relative error", criterion_threshold_certification},
    {8, "densest-k retrieval hits the optimum tier", criterion_densest_retrieval},
    {9, "laziness dichotomy matches the explicit matrix", criterion_laziness_dichotomy},
    {10, "runs and reports are deterministic", criterion_determinism},
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--criterion" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else if (arg == "--help") {
      std::cout << "usage: acceptance [--criterion N]\n";
      return 0;
    }
  }

  int failures = 0;
  bool matched = false;
  for (const Criterion& c : kCriteria) {
    if (only != 0 && c.index != only) continue;
    matched = true;
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("unexpected exception: ") + e.what()};
    }
    std::cout << (outcome.ok ? "[PASS]" : "[FAIL]") << " criterion " << c.index << ": " << c.label
              << " (" << outcome.summary << ")\n";
    failures += outcome.ok ? 0 : 1;
  }
  if (!matched) {
    std::cerr << "no criterion " << only << "\n";
    return 2;
  }
  return failures == 0 ? 0 : 1;
}
