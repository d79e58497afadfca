#include "cdel/config_analysis.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cstdlib>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "json.hpp"

#include "cdel/canonical.hpp"
#include "cdel/p3_structure.hpp"

namespace cdel {

namespace {

constexpr std::uint32_t kA = 0b111;
constexpr int kMaxCore = 32;

std::uint32_t bit(int x) { return std::uint32_t{1} << x; }

int f_size(const ConfigurationGraph& j, int x, int y) {
  return std::popcount(j.adj[x] & ~j.adj[y] & ~bit(y)) + std::popcount(j.adj[y] & ~j.adj[x] & ~bit(x)) + j.stubs[x] +
         j.stubs[y];
}

bool touches_ab(const ConfigurationGraph& j, int x, int y) { return x < 3 + j.b_count || y < 3 + j.b_count; }

bool on_u_side(std::uint32_t a) { return ((a & 1u) != 0) != ((a & 2u) != 0); }
bool on_w_side(std::uint32_t a) { return ((a & 4u) != 0) != ((a & 2u) != 0); }

void add_vertex(ConfigurationGraph& j, std::uint32_t neighbors, int stubs) {
  const int x = j.core_size();
  j.adj.push_back(neighbors);
  j.stubs.push_back(stubs);
  for (std::uint32_t m = neighbors; m; m &= m - 1) j.adj[std::countr_zero(m)] |= bit(x);
}

ColoredGraph colored(const ConfigurationGraph& j, bool swap_ends) {
  ColoredGraph g;
  g.n = j.core_size();
  g.adj = j.adj;
  g.color.resize(g.n);
  g.color[0] = swap_ends ? 2 : 0;
  g.color[1] = 1;
  g.color[2] = swap_ends ? 0 : 2;
  for (int x = 3; x < g.n; ++x) g.color[x] = j.is_b(x) ? 3 : 4 + j.stubs[x];
  return g;
}

int worker_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("CDEL_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// Runs body(i) for i in [0, count) on `threads` workers.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body) {
  if (threads <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < count;) body(i);
    });
  for (auto& th : pool) th.join();
}

using Bucket = std::unordered_map<std::string, ConfigurationGraph>;

std::vector<ConfigurationGraph> dedupe(std::vector<Bucket>& buckets) {
  std::map<std::string, ConfigurationGraph> merged;
  for (auto& b : buckets)
    for (auto& [key, j] : b) merged.try_emplace(key, std::move(j));
  std::vector<ConfigurationGraph> out;
  out.reserve(merged.size());
  for (auto& [key, j] : merged) out.push_back(std::move(j));
  return out;
}

}  // namespace

ConfigurationGraph ConfigurationGraph::bare_p3() {
  ConfigurationGraph j;
  j.adj = {bit(1), bit(0) | bit(2), bit(1)};
  j.stubs = {0, 0, 0};
  return j;
}

int ConfigurationGraph::stub_total() const {
  int t = 0;
  for (int s : stubs) t += s;
  return t;
}

Graph ConfigurationGraph::materialize() const {
  const int n = core_size();
  Graph g(n + stub_total());
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y)
      if (has_edge(x, y)) g.add_edge(x, y);
  VertexId next = n;
  for (int x = 0; x < n; ++x)
    for (int s = 0; s < stubs[x]; ++s) g.add_edge(x, next++);
  return g;
}

std::string ConfigurationGraph::canonical() const {
  std::string a = canonical_certificate(colored(*this, false));
  std::string b = canonical_certificate(colored(*this, true));
  return std::min(a, b);
}

std::string ConfigurationGraph::describe() const {
  std::ostringstream out;
  out << "B=[";
  for (int x = 3; x < 3 + b_count; ++x) out << (x > 3 ? "," : "") << x;
  out << "] B1=[";
  for (int x = 3 + b_count; x < core_size(); ++x) {
    out << (x > 3 + b_count ? "," : "") << x;
    if (stubs[x]) out << '*' << stubs[x];
  }
  out << "] edges=[";
  bool first = true;
  for (int x = 0; x < core_size(); ++x)
    for (int y = x + 1; y < core_size(); ++y)
      if (has_edge(x, y)) {
        out << (first ? "" : " ") << x << '-' << y;
        first = false;
      }
  out << ']';
  return out.str();
}

std::string validate_configuration(const ConfigurationGraph& j, const EnumerationLimits& limits) {
  const int n = j.core_size();
  if (j.b_count < 0 || j.b1_count < 0 || n > kMaxCore) return "bad vertex counts";
  if (static_cast<int>(j.adj.size()) != n || static_cast<int>(j.stubs.size()) != n) return "size mismatch";
  for (int x = 0; x < n; ++x) {
    if (j.adj[x] & bit(x)) return "self-loop at " + std::to_string(x);
    if (n < 32 && (j.adj[x] >> n)) return "edge leaves the core at " + std::to_string(x);
    for (int y = 0; y < n; ++y)
      if (j.has_edge(x, y) != j.has_edge(y, x)) return "asymmetric adjacency";
  }
  if ((j.adj[0] & kA) != bit(1) || (j.adj[2] & kA) != bit(1) || (j.adj[1] & kA) != (bit(0) | bit(2)))
    return "A is not the path u'-v'-w'";
  if (j.b_count > limits.max_b || j.b1_count > limits.max_b1) return "stratum beyond limits";
  int side_u = 0, side_w = 0;
  for (int x = 3; x < n; ++x) {
    const std::uint32_t a = j.adj[x] & kA;
    if (j.is_b(x)) {
      if (std::popcount(a) < 1 || std::popcount(a) > 2) return "B vertex " + std::to_string(x) + " has " + std::to_string(std::popcount(a)) + " A-neighbors";
      if (j.stubs[x]) return "stub on B vertex " + std::to_string(x);
      side_u += on_u_side(a);
      side_w += on_w_side(a);
    } else {
      if (a) return "B1 vertex " + std::to_string(x) + " touches A";
      std::uint32_t bmask = 0;
      for (int y = 3; y < 3 + j.b_count; ++y) bmask |= bit(y);
      if (!(j.adj[x] & bmask)) return "B1 vertex " + std::to_string(x) + " has no B neighbor";
      if (j.stubs[x] < 0 || j.stubs[x] > limits.max_stubs) return "stub count out of range at " + std::to_string(x);
    }
  }
  for (int x = 0; x < 3; ++x)
    if (j.stubs[x]) return "stub on A";
  if (side_u > limits.max_side || side_w > limits.max_side) return "|B_u| or |B_w| too large";
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y)
      if (j.has_edge(x, y) && touches_ab(j, x, y) && f_size(j, x, y) > limits.max_f)
        return "|F| = " + std::to_string(f_size(j, x, y)) + " on edge " + std::to_string(x) + "-" + std::to_string(y);
  return {};
}

ConfigurationEnumerator::ConfigurationEnumerator(EnumerationLimits limits) : limits_(limits) {
  if (3 + limits.max_b + limits.max_b1 > kMaxCore) throw PreconditionError("configuration core limited to 32 vertices");
}

std::vector<ConfigurationGraph> ConfigurationEnumerator::extend_b(const std::vector<ConfigurationGraph>& level,
                                                                  const EnumerationLimits& limits) {
  static constexpr std::uint32_t kPatterns[] = {0b001, 0b010, 0b100, 0b011, 0b110, 0b101};
  Bucket bucket;
  for (const auto& base : level) {
    if (base.b1_count != 0) throw std::logic_error("extend_b on a configuration with B_1 vertices");
    for (std::uint32_t pattern : kPatterns)
      for (std::uint32_t sub = 0; sub < (std::uint32_t{1} << base.b_count); ++sub) {
        ConfigurationGraph j = base;
        add_vertex(j, pattern | (sub << 3), 0);
        ++j.b_count;
        if (!validate_configuration(j, limits).empty()) continue;
        bucket.try_emplace(j.canonical(), std::move(j));
      }
  }
  std::vector<Bucket> buckets;
  buckets.push_back(std::move(bucket));
  return dedupe(buckets);
}

std::vector<ConfigurationGraph> ConfigurationEnumerator::extend_b1(const std::vector<ConfigurationGraph>& level,
                                                                   const EnumerationLimits& limits) {
  const int threads = worker_count(0);
  std::vector<Bucket> buckets(threads);
  std::atomic<std::size_t> next{0};
  auto work = [&](int t) {
    for (std::size_t i; (i = next.fetch_add(1)) < level.size();) {
      const ConfigurationGraph& base = level[i];
      const int n = base.core_size();
      const int b = base.b_count;
      const int m = base.b1_count;
      // Edges touching A u B whose F set is already full: a new vertex
      // adjacent to exactly one endpoint would overflow it.
      std::vector<std::uint32_t> saturated;
      for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y)
          if (base.has_edge(x, y) && touches_ab(base, x, y) && f_size(base, x, y) >= limits.max_f)
            saturated.push_back(bit(x) | bit(y));
      for (std::uint32_t bsub = 1; bsub < (std::uint32_t{1} << b); ++bsub)
        for (std::uint32_t csub = 0; csub < (std::uint32_t{1} << m); ++csub) {
          const std::uint32_t nb = (bsub << 3) | (csub << (3 + b));
          if (std::any_of(saturated.begin(), saturated.end(),
                          [&](std::uint32_t e) { return std::popcount(e & nb) == 1; }))
            continue;
          int worst = 0;
          for (std::uint32_t s = bsub << 3; s; s &= s - 1) {
            const int y = std::countr_zero(s);
            worst = std::max(worst, std::popcount(base.adj[y] & ~nb) + std::popcount(nb & ~base.adj[y] & ~bit(y)));
          }
          for (int stubs = 0; stubs <= limits.max_stubs && worst + stubs <= limits.max_f; ++stubs) {
            ConfigurationGraph j = base;
            add_vertex(j, nb, stubs);
            ++j.b1_count;
            buckets[t].try_emplace(j.canonical(), std::move(j));
          }
        }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(work, t);
  work(0);
  for (auto& th : pool) th.join();
  return dedupe(buckets);
}

void ConfigurationEnumerator::run(
    const std::function<bool(int, int, const std::vector<ConfigurationGraph>&)>& visit) const {
  std::vector<ConfigurationGraph> b_level{ConfigurationGraph::bare_p3()};
  for (int b = 0; b <= limits_.max_b; ++b) {
    if (b > 0) b_level = extend_b(b_level, limits_);
    std::vector<ConfigurationGraph> level = b_level;
    for (int m = 0; m <= limits_.max_b1; ++m) {
      if (m > 0) level = extend_b1(level, limits_);
      if (!visit(b, m, level)) return;
    }
  }
}

std::vector<ConfigurationGraph> enumerate_configurations(const EnumerationLimits& limits) {
  std::vector<ConfigurationGraph> all;
  ConfigurationEnumerator(limits).run([&](int, int, const std::vector<ConfigurationGraph>& level) {
    all.insert(all.end(), level.begin(), level.end());
    return true;
  });
  return all;
}

namespace {

void close(Graph g, int cost, std::string path, std::vector<ClosureLeaf>& out) {
  const InducedP3 p3{0, 1, 2};
  const P3Context ctx = build_context(g, p3);
  if (!ctx.j || *ctx.j != 0) {
    out.push_back({std::move(g), cost, std::move(path)});
    return;
  }
  const auto& frontier = ctx.frontiers[0];
  const Edge e = *std::find_if(frontier.begin(), frontier.end(), [&](const Edge& x) { return f_set_size(g, x) >= 3; });
  const EdgeSet f = f_set(g, e);
  Graph keep = g;
  keep.remove_edge(e.a, e.b);
  close(std::move(keep), cost + 1, path + '1', out);
  close(delete_edges(g, f), cost + static_cast<int>(f.size()), path + '2', out);
}

}  // namespace

std::vector<ClosureLeaf> first_stage_closure(const Graph& g) {
  std::vector<ClosureLeaf> out;
  close(g, 0, "", out);
  return out;
}

std::vector<ClosureLeaf> first_stage_closure(const ConfigurationGraph& j) { return first_stage_closure(j.materialize()); }

int s_lower_bound(const Graph& g, const std::vector<VertexId>& b_vertices) {
  std::vector<char> in_b(g.vertex_count(), 0);
  for (VertexId x : b_vertices) in_b[x] = 1;
  auto in_a = [](VertexId x) { return x <= 2; };
  auto allowed = [&](VertexId x, VertexId y) {
    return g.has_edge(x, y) && ((in_a(x) && in_a(y)) || (in_a(x) && in_b[y]) || (in_b[x] && in_a(y)));
  };
  std::vector<std::pair<Edge, Edge>> p3s;
  for (VertexId c = 0; c < g.vertex_count(); ++c) {
    if (!in_a(c) && !in_b[c]) continue;
    std::vector<VertexId> nb;
    for (VertexId y : g.neighbors(c))
      if (allowed(c, y)) nb.push_back(y);
    for (std::size_t i = 0; i < nb.size(); ++i)
      for (std::size_t k = i + 1; k < nb.size(); ++k)
        if (!g.has_edge(nb[i], nb[k])) p3s.emplace_back(Edge(c, nb[i]), Edge(c, nb[k]));
  }
  int best = 0;
  EdgeSet used;
  std::function<void(std::size_t, int)> pack = [&](std::size_t i, int taken) {
    if (taken + static_cast<int>(p3s.size() - i) <= best) return;
    if (i == p3s.size()) {
      best = taken;
      return;
    }
    const auto& [e1, e2] = p3s[i];
    if (!used.count(e1) && !used.count(e2)) {
      used.insert(e1);
      used.insert(e2);
      pack(i + 1, taken + 1);
      used.erase(e1);
      used.erase(e2);
    }
    pack(i + 1, taken);
  };
  pack(0, 0);
  return std::max(best, 1);
}

ConfigurationVerdict analyze_configuration(const ConfigurationGraph& j) {
  std::vector<VertexId> bs;
  for (int x = 3; x < 3 + j.b_count; ++x) bs.push_back(x);
  std::vector<ChainLeaf> chain;
  const auto leaves = first_stage_closure(j);
  for (const auto& leaf : leaves) {
    const P3Context ctx = build_context(leaf.graph, InducedP3{0, 1, 2});
    chain.push_back({leaf.cost, static_cast<int>(ctx.frontier_size(1)), s_lower_bound(leaf.graph, bs)});
  }
  ConfigurationVerdict v;
  v.vector = compose_chain_vector(chain);
  v.branching_number = branching_number(v.vector);
  v.leaves = leaves.size();
  return v;
}

std::vector<std::string> ConfigurationReport::uncovered_strata() const {
  std::vector<std::string> out;
  for (const auto& s : coverage)
    if (!s.complete) out.push_back("|B|=" + std::to_string(s.b) + ",|B1|=" + std::to_string(s.b1));
  return out;
}

std::string ConfigurationReport::to_json(int indent) const {
  nlohmann::ordered_json j;
  j["configs_checked"] = configs_checked;
  j["max_branching_number"] = max_branching_number;
  j["threshold"] = threshold;
  j["argmax_config"] = argmax_config;
  j["argmax_description"] = argmax_description;
  j["argmax_vector"] = argmax_vector;
  auto& vs = j["violations"] = nlohmann::ordered_json::array();
  for (const auto& v : violations)
    vs.push_back({{"config", v.config}, {"vector", v.vector}, {"branching_number", v.branching_number}});
  nlohmann::ordered_json cov;
  cov["complete"] = complete;
  cov["uncovered_strata"] = uncovered_strata();
  auto& strata = cov["strata"] = nlohmann::ordered_json::array();
  for (const auto& s : coverage)
    strata.push_back({{"b", s.b},
                      {"b1", s.b1},
                      {"configs", s.configs},
                      {"analyzed", s.analyzed},
                      {"complete", s.complete},
                      {"max_branching_number", s.max_branching_number}});
  j["coverage"] = cov;
  j["elapsed_seconds"] = elapsed_seconds;
  return j.dump(indent);
}

ConfigurationReport analyze_all(const AnalysisOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const int threads = worker_count(options.threads);
  auto out_of_time = [&] {
    if (!options.time_cap_seconds) return false;
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() > *options.time_cap_seconds;
  };

  ConfigurationReport report;
  report.threshold = options.threshold;
  for (int b = 0; b <= options.limits.max_b; ++b)
    for (int m = 0; m <= options.limits.max_b1; ++m) report.coverage.push_back({b, m, 0, 0, false, 1.0});

  ConfigurationEnumerator(options.limits).run([&](int b, int m, const std::vector<ConfigurationGraph>& level) {
    StratumCoverage& cov = report.coverage[b * (options.limits.max_b1 + 1) + m];
    cov.configs = static_cast<long long>(level.size());
    std::vector<std::optional<ConfigurationVerdict>> verdicts(level.size());
    std::atomic<bool> stopped{false};
    parallel_for(level.size(), threads, [&](std::size_t i) {
      if (stopped.load() || out_of_time()) {
        stopped = true;
        return;
      }
      verdicts[i] = analyze_configuration(level[i]);
    });
    for (std::size_t i = 0; i < level.size(); ++i) {
      if (!verdicts[i]) continue;
      ++cov.analyzed;
      ++report.configs_checked;
      const double bn = verdicts[i]->branching_number;
      cov.max_branching_number = std::max(cov.max_branching_number, bn);
      if (bn >= options.threshold)
        report.violations.push_back({level[i].canonical(), verdicts[i]->vector.to_string(), bn});
      // level is in canonical order, so the first maximum is the canonical argmax
      if (bn > report.max_branching_number || report.argmax_config.empty()) {
        report.max_branching_number = bn;
        report.argmax_config = level[i].canonical();
        report.argmax_description = level[i].describe();
        report.argmax_vector = verdicts[i]->vector.to_string();
      }
    }
    cov.complete = cov.analyzed == cov.configs;
    return cov.complete && !out_of_time();
  });

  std::sort(report.violations.begin(), report.violations.end(),
            [](const Violation& x, const Violation& y) { return x.config < y.config; });
  report.complete = std::all_of(report.coverage.begin(), report.coverage.end(),
                                [](const StratumCoverage& s) { return s.complete; });
  report.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace cdel
