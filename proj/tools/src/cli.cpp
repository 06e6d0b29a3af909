#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dks/analysis.hpp"
#include "dks/errors.hpp"
#include "dks/graph.hpp"
#include "dks/rational.hpp"
#include "dks/sampler.hpp"
#include "dks/subsets.hpp"
#include "dks/token_graph.hpp"
#include "dks/version.hpp"

namespace dks::cli {
namespace {

using ordered_json = nlohmann::ordered_json;

constexpr const char* kSchema = "dks.report.v1";
constexpr const char* kLazyFormula = "C * log2(1/epsilon) * (xi - (n-1)^2 / d^4)";

struct RunConfig {
  std::string input_path;
  std::string output_path;
  int k = 0;
  std::optional<std::uint64_t> burn_in;
  std::uint64_t samples = 100'000;
  std::uint64_t seed = 0;
  std::string dynamics = "loop";
  double epsilon = 0.1;
  double lazy_constant = 1.0;
  std::uint64_t max_vertices = 0;  // per-command default, set at option setup
  std::uint64_t top = 100;
  int n = 0;
  int d = 0;
};

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (const unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex64(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
  return buf;
}

std::string iso_timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open input file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ordered_json rational_json(const Rational& r) {
  ordered_json j;
  j["exact"] = r.str();
  j["value"] = r.to_double();
  return j;
}

ordered_json host_json(const Graph& g) {
  ordered_json h;
  h["vertices"] = g.vertex_count();
  h["edges"] = g.edge_count();
  const auto d = g.regular_degree();
  h["regular_degree"] = d ? ordered_json(*d) : ordered_json(nullptr);
  h["connected"] = g.is_connected();
  h["complement_connected"] = g.complement_is_connected();
  return h;
}

const char* regime_name(Regime r) {
  switch (r) {
    case Regime::non_lazy_branch: return "non_lazy";
    case Regime::lazy_branch: return "lazy";
    default: return "unresolved";
  }
}

ordered_json mixing_json(const MixingBounds& mb, int n, int d, int k,
                         const LazinessReport* lz) {
  ordered_json m;
  m["n"] = n;
  m["d"] = d;
  m["k"] = k;
  m["epsilon"] = mb.epsilon;
  m["rho"] = mb.rho;
  m["xi"] = mb.xi;
  m["threshold_non_lazy"] = mb.threshold_non_lazy;
  ordered_json lazy;
  lazy["constant"] = mb.lazy_constant;
  lazy["formula"] = kLazyFormula;
  lazy["value"] = mb.threshold_lazy;
  lazy["vacuous"] = !(mb.threshold_lazy > 0.0);
  m["threshold_lazy"] = lazy;
  if (lz != nullptr) {
    m["regime"] = regime_name(lz->regime);
    ordered_json l;
    l["min_avg_induced_degree"] = lz->min_avg_induced_degree
                                      ? rational_json(*lz->min_avg_induced_degree)
                                      : ordered_json(nullptr);
    l["lower_bound"] = rational_json(lz->min_avg_lower);
    l["upper_bound"] = rational_json(lz->min_avg_upper);
    l["is_lazy"] = lz->is_lazy ? ordered_json(*lz->is_lazy) : ordered_json(nullptr);
    l["gamma"] = lz->gamma ? ordered_json(*lz->gamma) : ordered_json(nullptr);
    m["laziness"] = l;
  }
  return m;
}

ordered_json provenance_json(const std::string& input_path, const std::string* input_bytes,
                             ordered_json config) {
  ordered_json p;
  p["library_version"] = kVersion;
  if (input_bytes != nullptr) {
    ordered_json in;
    in["path"] = input_path;
    in["fnv1a64"] = hex64(fnv1a64(*input_bytes));
    p["input"] = in;
  }
  p["config"] = std::move(config);
  p["generated_at"] = iso_timestamp();
  return p;
}

void emit_report(const ordered_json& j, const RunConfig& c, std::ostream& out) {
  const std::string text = j.dump(2) + "\n";
  if (!c.output_path.empty()) {
    std::ofstream f(c.output_path, std::ios::binary);
    if (!f) throw ValidationError("cannot open output file: " + c.output_path);
    f << text;
  } else {
    out << text;
  }
}

int cmd_sample(const RunConfig& c, std::ostream& out) {
  if (c.dynamics != "loop")
    throw ValidationError(
        "densest-subset sampling requires loop dynamics; the classical chain has a "
        "uniform stationary law and carries no density signal");
  const std::string bytes = read_file(c.input_path);
  const Graph g = Graph::parse_edge_list(bytes);

  const DensestReport rep = sample_densest(g, c.k, c.burn_in, c.samples, c.seed);

  const Graph comp = g.complement();
  const int dc = *comp.regular_degree();
  const MixingBounds mb = mixing_bounds(g.vertex_count(), dc, c.k, c.epsilon, c.lazy_constant);
  const LazinessReport lz = laziness_and_regime(comp, c.k);

  ordered_json config;
  config["command"] = "sample";
  config["input"] = c.input_path;
  config["k"] = c.k;
  config["burn_in"] = rep.burn_in;
  config["burn_in_defaulted"] = rep.burn_in_defaulted;
  config["samples"] = c.samples;
  config["seed"] = c.seed;
  config["dynamics"] = c.dynamics;
  config["epsilon"] = c.epsilon;
  config["lazy_constant"] = c.lazy_constant;
  config["top"] = c.top;

  ordered_json j;
  j["schema"] = kSchema;
  j["command"] = "sample";
  j["provenance"] = provenance_json(c.input_path, &bytes, std::move(config));
  j["host"] = host_json(g);

  ordered_json chain;
  chain["runs_on"] = "complement";
  chain["dynamics"] = "loop";
  chain["k"] = c.k;
  chain["seed"] = c.seed;
  chain["burn_in"] = rep.burn_in;
  chain["burn_in_defaulted"] = rep.burn_in_defaulted;
  chain["samples"] = c.samples;
  chain["distinct_subsets"] = rep.ranking.size();
  j["chain"] = chain;
  j["mixing"] = mixing_json(mb, g.vertex_count(), dc, c.k, &lz);

  const std::size_t shown =
      c.top == 0 ? rep.ranking.size() : std::min<std::size_t>(c.top, rep.ranking.size());
  ordered_json ranking = ordered_json::array();
  for (std::size_t i = 0; i < shown; ++i) {
    const RankedSubset& r = rep.ranking[i];
    ordered_json e;
    e["members"] = r.members;
    e["count"] = r.count;
    e["frequency"] = static_cast<double>(r.count) / static_cast<double>(c.samples);
    e["edge_count"] = r.edge_count;
    e["density"] = rational_json(r.density);
    ranking.push_back(std::move(e));
  }
  j["ranking"] = ranking;
  j["ranking_truncated"] = shown < rep.ranking.size();

  emit_report(j, c, out);
  return 0;
}

int cmd_bounds(const RunConfig& c, std::ostream& out) {
  const MixingBounds mb = mixing_bounds(c.n, c.d, c.k, c.epsilon, c.lazy_constant);

  ordered_json config;
  config["command"] = "bounds";
  config["n"] = c.n;
  config["d"] = c.d;
  config["k"] = c.k;
  config["epsilon"] = c.epsilon;
  config["lazy_constant"] = c.lazy_constant;

  ordered_json j;
  j["schema"] = kSchema;
  j["command"] = "bounds";
  j["provenance"] = provenance_json("", nullptr, std::move(config));
  j["mixing"] = mixing_json(mb, c.n, c.d, c.k, nullptr);
  emit_report(j, c, out);
  return 0;
}

int cmd_exact(const RunConfig& c, std::ostream& out) {
  const std::string bytes = read_file(c.input_path);
  const Graph g = Graph::parse_edge_list(bytes);
  const TokenGraph tg = TokenGraph::build(g, c.k, c.max_vertices);
  const TransitionMatrix tm(tg);
  const StationaryDistribution pi(tg);

  ordered_json config;
  config["command"] = "exact";
  config["input"] = c.input_path;
  config["k"] = c.k;
  config["max_vertices"] = c.max_vertices;

  ordered_json j;
  j["schema"] = kSchema;
  j["command"] = "exact";
  j["provenance"] = provenance_json(c.input_path, &bytes, std::move(config));
  j["host"] = host_json(g);

  ordered_json t;
  t["vertices"] = tg.vertex_count();
  t["edges"] = tg.edge_count();
  t["k"] = tg.k();
  t["stationary_normalization"] = pi.normalization();
  j["token_graph"] = t;

  ordered_json states = ordered_json::array();
  for (std::uint64_t v = 0; v < tg.vertex_count(); ++v) {
    const auto u = static_cast<std::uint32_t>(v);
    ordered_json s;
    s["index"] = v;
    s["members"] = tg.subset_of(u);
    s["degree"] = tg.degree(u);
    s["pi"] = rational_json(pi.weight_exact(u));
    s["self_probability"] = rational_json(tm.probability_exact(u, u));
    s["neighbor_probability"] =
        rational_json(Rational{1, static_cast<std::int64_t>(tg.degree(u)) + tg.k()});
    const auto row = tg.neighbors(u);
    s["neighbors"] = std::vector<std::uint32_t>(row.begin(), row.end());
    states.push_back(std::move(s));
  }
  j["states"] = states;
  emit_report(j, c, out);
  return 0;
}

struct CheckResult {
  std::string name;
  bool passed = true;
  bool skipped = false;
  std::string detail;
};

std::vector<CheckResult> run_verify_checks(const Graph& g, int k, std::uint64_t cap) {
  std::vector<CheckResult> checks;
  const int n = g.vertex_count();
  const auto d = g.regular_degree();
  const TokenGraph tg = TokenGraph::build(g, k, cap);
  const TransitionMatrix tm(tg);
  const StationaryDistribution pi(tg);
  const auto vcount = static_cast<std::uint32_t>(tg.vertex_count());

  {
    CheckResult r{.name = "vertex_count_matches_enumeration", .detail = ""};
    std::uint64_t enumerated = 0;
    std::vector<int> members(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) members[static_cast<std::size_t>(i)] = i;
    do {
      ++enumerated;
    } while (next_k_subset(members, n));
    r.passed = enumerated == tg.vertex_count();
    r.detail = "enumerated " + std::to_string(enumerated) + ", expected " +
               std::to_string(tg.vertex_count());
    checks.push_back(std::move(r));
  }
  {
    CheckResult r{.name = "edge_count_closed_form", .detail = ""};
    if (!d) {
      r.skipped = true;
      r.detail = "requires a regular host";
    } else {
      const auto sc = structural_constants(g, k, cap);
      r.passed = sc.edge_count && *sc.edge_count == tg.edge_count();
      r.detail = "constructed " + std::to_string(tg.edge_count()) + ", formula " +
                 (sc.edge_count ? std::to_string(*sc.edge_count) : std::string("absent"));
    }
    checks.push_back(std::move(r));
  }
  {
    CheckResult r{.name = "average_degree_ratio", .detail = ""};
    if (!d) {
      r.skipped = true;
      r.detail = "requires a regular host";
    } else {
      // 2|E| (n-1) == d k (n-k) |V| makes avg_deg / (k(n-k)) = d/(n-1).
      const __int128 lhs = static_cast<__int128>(2) * tg.edge_count() * (n - 1);
      const __int128 rhs = static_cast<__int128>(*d) * k * (n - k) *
                           static_cast<__int128>(tg.vertex_count());
      r.passed = lhs == rhs;
      r.detail = r.passed ? "exact" : "ratio identity violated";
    }
    checks.push_back(std::move(r));
  }
  {
    CheckResult r{.name = "token_degree_identity", .detail = ""};
    if (!d) {
      r.skipped = true;
      r.detail = "requires a regular host";
    } else {
      r.detail = "deg = k*d - 2*induced_edges on all " + std::to_string(vcount) + " subsets";
      for (std::uint32_t v = 0; v < vcount; ++v) {
        const auto members = tg.subset_of(v);
        const std::int64_t expect =
            static_cast<std::int64_t>(k) * *d - 2 * induced_edge_count(g, members);
        if (static_cast<std::int64_t>(tg.degree(v)) != expect) {
          r.passed = false;
          r.detail = "violated at token index " + std::to_string(v);
          break;
        }
      }
    }
    checks.push_back(std::move(r));
  }
  {
    CheckResult r{.name = "transition_rows_stochastic", .detail = "exact row sums equal 1"};
    for (std::uint32_t v = 0; v < vcount; ++v)
      if (!(tm.row_sum_exact(v) == Rational{1})) {
        r.passed = false;
        r.detail = "row " + std::to_string(v) + " does not sum to 1";
        break;
      }
    checks.push_back(std::move(r));
  }
  {
    CheckResult r{.name = "stationary_fixed_point", .detail = "pi P = pi, exact"};
    for (std::uint32_t w = 0; w < vcount && r.passed; ++w) {
      Rational total = pi.weight_exact(w) * tm.probability_exact(w, w);
      for (const std::uint32_t v : tg.neighbors(w))
        total = total + pi.weight_exact(v) * tm.probability_exact(v, w);
      if (!(total == pi.weight_exact(w))) {
        r.passed = false;
        r.detail = "violated at token index " + std::to_string(w);
      }
    }
    checks.push_back(std::move(r));
  }
  {
    CheckResult r{.name = "detailed_balance", .detail = "pi(v)p(v,w) = pi(w)p(w,v), exact"};
    for (std::uint32_t v = 0; v < vcount && r.passed; ++v)
      for (const std::uint32_t w : tg.neighbors(v)) {
        const Rational flow = pi.weight_exact(v) * tm.probability_exact(v, w);
        const Rational back = pi.weight_exact(w) * tm.probability_exact(w, v);
        if (!(flow == back)) {
          r.passed = false;
          r.detail = "violated between token indices " + std::to_string(v) + " and " +
                     std::to_string(w);
          break;
        }
      }
    checks.push_back(std::move(r));
  }
  {
    CheckResult r{.name = "arrow_count_law",
                  .detail = "loop arrows = deg+k; classical arrows = sum of host degrees"};
    for (std::uint32_t v = 0; v < vcount && r.passed; ++v) {
      const auto members = tg.subset_of(v);
      const VertexSubset subset{members};
      const auto loop = build_boundary(g, subset, Dynamics::loop);
      const auto classical = build_boundary(g, subset, Dynamics::classical);
      std::uint64_t deg_sum = 0;
      for (const int u : members) deg_sum += static_cast<std::uint64_t>(g.degree(u));
      if (loop.arrows.size() != tg.degree(v) + static_cast<std::uint64_t>(k) ||
          classical.arrows.size() != deg_sum) {
        r.passed = false;
        r.detail = "violated at token index " + std::to_string(v);
      }
    }
    checks.push_back(std::move(r));
  }
  return checks;
}

int cmd_verify(const RunConfig& c, std::ostream& out) {
  const std::string bytes = read_file(c.input_path);
  const Graph g = Graph::parse_edge_list(bytes);
  const std::vector<CheckResult> checks = run_verify_checks(g, c.k, c.max_vertices);

  ordered_json config;
  config["command"] = "verify";
  config["input"] = c.input_path;
  config["k"] = c.k;
  config["max_vertices"] = c.max_vertices;

  ordered_json j;
  j["schema"] = kSchema;
  j["command"] = "verify";
  j["provenance"] = provenance_json(c.input_path, &bytes, std::move(config));
  j["host"] = host_json(g);
  j["k"] = c.k;

  bool all_passed = true;
  ordered_json arr = ordered_json::array();
  for (const CheckResult& r : checks) {
    ordered_json e;
    e["name"] = r.name;
    e["passed"] = r.passed;
    if (r.skipped) e["skipped"] = true;
    e["detail"] = r.detail;
    arr.push_back(std::move(e));
    if (!r.skipped && !r.passed) all_passed = false;
  }
  j["checks"] = arr;
  j["passed"] = all_passed;
  emit_report(j, c, out);
  return all_passed ? 0 : 1;
}

int cmd_tokengraph(const RunConfig& c, std::ostream& out) {
  const std::string bytes = read_file(c.input_path);
  const Graph g = Graph::parse_edge_list(bytes);
  const TokenGraph tg = TokenGraph::build(g, c.k, c.max_vertices);

  std::ostringstream edges;
  edges << "# token graph adjacency, k=" << tg.k() << ", host vertices=" << g.vertex_count()
        << "\n# " << tg.vertex_count() << " vertices, " << tg.edge_count() << " edges\n";
  for (std::uint64_t v = 0; v < tg.vertex_count(); ++v)
    for (const std::uint32_t w : tg.neighbors(static_cast<std::uint32_t>(v)))
      if (w > v) edges << v << " " << w << "\n";

  std::ostringstream map;
  map << "# token index -> subset members\n";
  for (std::uint64_t v = 0; v < tg.vertex_count(); ++v) {
    map << v;
    for (const int u : tg.subset_of(static_cast<std::uint32_t>(v))) map << " " << u;
    map << "\n";
  }

  if (c.output_path.empty()) {
    out << edges.str() << map.str();
    return 0;
  }
  const std::string edge_path = c.output_path + ".edges";
  const std::string map_path = c.output_path + ".map";
  std::ofstream ef(edge_path, std::ios::binary);
  if (!ef) throw ValidationError("cannot open output file: " + edge_path);
  ef << edges.str();
  std::ofstream mf(map_path, std::ios::binary);
  if (!mf) throw ValidationError("cannot open output file: " + map_path);
  mf << map.str();
  out << "wrote " << edge_path << " and " << map_path << "\n";
  return 0;
}

int emit_error(std::ostream& out, const std::string& kind, const std::string& message,
               const std::string& hypothesis, std::optional<int> line, int code) {
  ordered_json e;
  e["kind"] = kind;
  if (!hypothesis.empty()) e["hypothesis"] = hypothesis;
  if (line) e["line"] = *line;
  e["message"] = message;
  ordered_json j;
  j["schema"] = kSchema;
  j["error"] = e;
  out << j.dump(2) << "\n";
  return code;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"densest k-subgraph sampling on token graphs"};
  app.require_subcommand(1);

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--output", c.output_path, "Write the report to this path instead of stdout");
  };

  CLI::App* sample = app.add_subcommand(
      "sample", "Rank k-subsets of the input graph by chain visit frequency");
  sample->add_option("--input", c.input_path, "Edge-list input file")->required();
  sample->add_option("--k", c.k, "Subset size")->required();
  sample->add_option("--burn-in,--burn_in", c.burn_in,
                     "Steps discarded before sampling (default: mixing threshold)");
  sample->add_option("--samples", c.samples, "Recorded steps after burn-in")->capture_default_str();
  sample->add_option("--seed", c.seed, "Random seed")->capture_default_str();
  sample->add_option("--dynamics", c.dynamics, "Chain dynamics: loop or classical")->capture_default_str()
      ->check(CLI::IsMember({"loop", "classical"}));
  sample->add_option("--epsilon", c.epsilon, "Mixing accuracy target in (0,1)")->capture_default_str();
  sample->add_option("--lazy-constant,--lazy_constant", c.lazy_constant,
                     "Constant C of the lazy-branch threshold")->capture_default_str();
  sample->add_option("--top", c.top, "Ranking entries to report (0 = all)")->capture_default_str();
  add_common(sample);

  CLI::App* bounds =
      app.add_subcommand("bounds", "Evaluate the mixing-time thresholds for (n, d, k)");
  bounds->add_option("--n", c.n, "Host vertex count")->required();
  bounds->add_option("--d", c.d, "Host regular degree")->required();
  bounds->add_option("--k", c.k, "Subset size")->required();
  bounds->add_option("--epsilon", c.epsilon, "Accuracy target in (0,1)")->capture_default_str();
  bounds->add_option("--lazy-constant,--lazy_constant", c.lazy_constant,
                     "Constant C of the lazy-branch threshold")->capture_default_str();
  add_common(bounds);

  CLI::App* exact = app.add_subcommand(
      "exact", "Dump the explicit token chain: stationary law and transition structure");
  exact->add_option("--input", c.input_path, "Edge-list input file")->required();
  exact->add_option("--k", c.k, "Subset size")->required();
  exact->add_option("--max-vertices,--max_vertices", c.max_vertices,
                    "Token vertex cap for the dense dump");
  add_common(exact);

  CLI::App* verify = app.add_subcommand(
      "verify", "Check the chain invariants on the input instance; nonzero exit on violation");
  verify->add_option("--input", c.input_path, "Edge-list input file")->required();
  verify->add_option("--k", c.k, "Subset size")->required();
  verify->add_option("--max-vertices,--max_vertices", c.max_vertices,
                     "Token vertex cap for the explicit checks");
  add_common(verify);

  CLI::App* tokengraph = app.add_subcommand(
      "tokengraph", "Export the explicit token graph as edge list plus index map");
  tokengraph->add_option("--input", c.input_path, "Edge-list input file")->required();
  tokengraph->add_option("--k", c.k, "Subset size")->required();
  tokengraph->add_option("--max-vertices,--max_vertices", c.max_vertices,
                         "Token vertex cap for construction");
  tokengraph->add_option("--output", c.output_path,
                         "Path prefix; writes <prefix>.edges and <prefix>.map");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    return emit_error(out, "usage", e.what(), "", std::nullopt, 1);
  }

  try {
    if (app.got_subcommand(sample)) return cmd_sample(c, out);
    if (app.got_subcommand(bounds)) return cmd_bounds(c, out);
    if (app.got_subcommand(exact)) {
      if (exact->count("--max-vertices") == 0) c.max_vertices = kDefaultDenseCap;
      return cmd_exact(c, out);
    }
    if (app.got_subcommand(verify)) {
      if (verify->count("--max-vertices") == 0) c.max_vertices = kDefaultDenseCap;
      return cmd_verify(c, out);
    }
    if (app.got_subcommand(tokengraph)) {
      if (tokengraph->count("--max-vertices") == 0) c.max_vertices = kDefaultConstructionCap;
      return cmd_tokengraph(c, out);
    }
    return emit_error(out, "usage", "no subcommand selected", "", std::nullopt, 1);
  } catch (const HypothesisError& e) {
    return emit_error(out, "hypothesis", e.what(), e.hypothesis(), std::nullopt, 1);
  } catch (const SizeCapError& e) {
    return emit_error(out, "size_cap", e.what(), "", std::nullopt, 2);
  } catch (const ParseError& e) {
    return emit_error(out, "parse", e.what(), "", e.line(), 1);
  } catch (const ValidationError& e) {
    return emit_error(out, "validation", e.what(), "", std::nullopt, 1);
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return emit_error(out, "internal", e.what(), "", std::nullopt, 3);
  }
}

}  // namespace dks::cli
