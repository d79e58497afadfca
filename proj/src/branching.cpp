#include "cdel/branching.hpp"

#include <algorithm>
#include <stdexcept>

#include "cdel/almost_clique.hpp"
#include "cdel/p3_structure.hpp"

namespace cdel {

void SearchStats::merge(const SearchStats& other) {
  nodes_expanded += other.nodes_expanded;
  auto& a = rule_counts;
  const auto& b = other.rule_counts;
  a.p3_branch += b.p3_branch;
  a.b1 += b.b1;
  a.b2 += b.b2;
  a.b3 += b.b3;
  a.b4 += b.b4;
  a.b5 += b.b5;
  a.reduce += b.reduce;
  a.b4_stage1_splits += b.b4_stage1_splits;
  a.b4_stage2_splits += b.b4_stage2_splits;
  a.b4_stage3_solves += b.b4_stage3_solves;
  a.b5_inner_b3 += b.b5_inner_b3;
  a.b5_inner_b2 += b.b5_inner_b2;
  a.lemma_audits += b.lemma_audits;
  max_depth = std::max(max_depth, other.max_depth);
  elapsed_ms += other.elapsed_ms;
}

bool SearchStats::same_counters(const SearchStats& other) const {
  return nodes_expanded == other.nodes_expanded && rule_counts == other.rule_counts && max_depth == other.max_depth;
}

Instance Instance::root(const Graph& g, long long k) {
  Instance inst;
  inst.graph = g;
  inst.k = k;
  inst.origin.resize(g.vertex_count());
  for (VertexId x = 0; x < g.vertex_count(); ++x) inst.origin[x] = x;
  return inst;
}

Instance delete_from(const Instance& inst, std::span<const Edge> edges) {
  Instance out;
  out.graph = delete_edges(inst.graph, edges);
  out.k = inst.k - static_cast<long long>(edges.size());
  out.marks = inst.marks;
  out.origin = inst.origin;
  out.deleted = inst.deleted;
  for (const Edge& e : edges) {
    out.marks.erase(e);
    out.deleted.emplace_back(inst.origin[e.a], inst.origin[e.b]);
  }
  return out;
}

Instance delete_from(const Instance& inst, const EdgeSet& edges) {
  const std::vector<Edge> list(edges.begin(), edges.end());
  return delete_from(inst, std::span<const Edge>(list));
}

ReduceResult reduce(Instance inst) {
  ReduceResult result;
  if (inst.k < 0) {
    result.outcome = ReduceOutcome::kNo;
    result.instance = std::move(inst);
    return result;
  }
  std::vector<VertexId> kept;
  for (const auto& block : connected_components(inst.graph))
    if (!is_clique(inst.graph, block)) kept.insert(kept.end(), block.begin(), block.end());
  std::sort(kept.begin(), kept.end());

  if (kept.empty()) result.outcome = ReduceOutcome::kYes;
  else if (inst.k == 0) result.outcome = ReduceOutcome::kNo;

  if (kept.size() == static_cast<std::size_t>(inst.graph.vertex_count())) {
    result.instance = std::move(inst);
    return result;
  }
  result.discarded = true;
  Instance out;
  out.graph = induced_subgraph(inst.graph, kept);
  out.k = inst.k;
  out.deleted = std::move(inst.deleted);
  std::vector<VertexId> local(inst.graph.vertex_count(), -1);
  for (std::size_t i = 0; i < kept.size(); ++i) {
    local[kept[i]] = static_cast<VertexId>(i);
    out.origin.push_back(inst.origin[kept[i]]);
  }
  for (const Edge& e : inst.marks)
    if (local[e.a] >= 0 && local[e.b] >= 0) out.marks.emplace(local[e.a], local[e.b]);
  result.instance = std::move(out);
  return result;
}

namespace {

std::vector<Edge> path_edges(std::span<const VertexId> path, std::size_t parity) {
  std::vector<Edge> out;
  for (std::size_t i = parity; i + 1 < path.size(); i += 2) out.emplace_back(path[i], path[i + 1]);
  return out;
}

std::vector<Instance> alternating_split(const Instance& inst, std::span<const VertexId> path) {
  const auto odd = path_edges(path, 0);
  const auto even = path_edges(path, 1);
  return {delete_from(inst, odd), delete_from(inst, even)};
}

std::optional<std::pair<VertexId, VertexId>> non_adjacent_pair(const Graph& g, const std::vector<VertexId>& set) {
  for (std::size_t i = 0; i < set.size(); ++i)
    for (std::size_t k = i + 1; k < set.size(); ++k)
      if (!g.has_edge(set[i], set[k])) return std::make_pair(set[i], set[k]);
  return std::nullopt;
}

void keep_feasible(std::vector<Instance>& from, std::vector<Instance>& into) {
  for (auto& inst : from)
    if (inst.k >= 0) into.push_back(std::move(inst));
}

// Vertices of a path component in order, starting from the smaller endpoint;
// empty if the component is not a path.
std::vector<VertexId> as_path(const Graph& g, const std::vector<VertexId>& comp, const std::vector<char>& in) {
  std::vector<VertexId> ends;
  std::size_t edges = 0;
  for (VertexId x : comp) {
    int deg = 0;
    for (VertexId y : g.neighbors(x)) deg += in[y];
    if (deg > 2) return {};
    if (deg <= 1) ends.push_back(x);
    edges += deg;
  }
  edges /= 2;
  if (edges + 1 != comp.size() || ends.empty()) return {};
  std::vector<VertexId> order{*std::min_element(ends.begin(), ends.end())};
  std::vector<char> used(g.vertex_count(), 0);
  used[order[0]] = 1;
  while (order.size() < comp.size()) {
    for (VertexId y : g.neighbors(order.back()))
      if (in[y] && !used[y]) {
        used[y] = 1;
        order.push_back(y);
        break;
      }
  }
  return order;
}

}  // namespace

std::vector<Instance> rule_b1(const Instance& inst, std::span<const VertexId> path) {
  if (path.size() < 7 || !is_induced_path(inst.graph, path))
    throw PreconditionError("rule B1 needs an induced path on at least 7 vertices");
  return alternating_split(inst, path);
}

std::vector<Instance> rule_b2(const Instance& inst, const Edge& e) {
  const EdgeSet f = f_set(inst.graph, e);
  if (f.size() < 4) throw PreconditionError("rule B2 needs |F_e| >= 4, edge " + to_string(e) + " has " + std::to_string(f.size()));
  const Edge single[] = {e};
  return {delete_from(inst, std::span<const Edge>(single)), delete_from(inst, f)};
}

std::vector<Instance> rule_b3(const Instance& inst, std::span<const VertexId> cycle) {
  if (cycle.size() != 4 || !is_induced_cycle(inst.graph, cycle)) throw PreconditionError("rule B3 needs an induced C4");
  const Edge first[] = {Edge(cycle[0], cycle[1]), Edge(cycle[2], cycle[3])};
  const Edge second[] = {Edge(cycle[1], cycle[2]), Edge(cycle[3], cycle[0])};
  return {delete_from(inst, std::span<const Edge>(first)), delete_from(inst, std::span<const Edge>(second))};
}

BranchingEngine::BranchingEngine(SolveOptions options) : options_(options) {}

void BranchingEngine::check_deadline() const {
  if (options_.deadline && std::chrono::steady_clock::now() > *options_.deadline) throw SearchTimeout();
}

std::optional<std::vector<VertexId>> BranchingEngine::find_path_for_b1(const Graph& g) const {
  return options_.path_rule == PathRuleMode::kLiteral ? find_induced_long_path(g, 7)
                                                      : find_isolated_interior_path(g, 7);
}

void BranchingEngine::stage_one(Instance inst, const InducedP3& p3, std::string path,
                                std::vector<FirstStageInstance>& out) {
  if (inst.k < 0) return;
  const P3Context ctx = build_context(inst.graph, p3, inst.marks);
  if (!ctx.j) {
    out.push_back({std::move(inst), std::move(path)});
    return;
  }
  const int j = *ctx.j;
  const auto& frontier = ctx.frontiers[j];
  const auto pick = std::find_if(frontier.begin(), frontier.end(),
                                 [&](const Edge& e) { return f_set_size(inst.graph, e) >= 3; });
  const Edge e = *pick;
  const EdgeSet f = f_set(inst.graph, e);
  ++stats_.rule_counts.b4_stage1_splits;

  const Edge single[] = {e};
  Instance keep_f = delete_from(inst, std::span<const Edge>(single));
  Instance drop_f = delete_from(inst, f);
  if (j == 1) {
    const VertexId x = ctx.level[e.a] == 1 ? e.a : e.b;
    const VertexId y = e.other(x);
    for (VertexId z : ctx.same_neighbors(inst.graph, x))
      if (inst.graph.has_edge(z, y)) {
        drop_f.marks.emplace(z, x);
        drop_f.marks.emplace(z, y);
      }
  }
  stage_one(std::move(keep_f), p3, path + '1', out);
  stage_one(std::move(drop_f), p3, path + '2', out);
}

std::vector<FirstStageInstance> BranchingEngine::b4_first_stage(const Instance& inst, const InducedP3& p3) {
  if (!is_induced_p3(inst.graph, p3)) throw PreconditionError("rule B4 needs an induced P3");
  std::vector<FirstStageInstance> out;
  stage_one(inst, p3, "", out);
  return out;
}

std::vector<Instance> BranchingEngine::b4_second_stage(const Instance& first_stage, const InducedP3& p3) {
  const Graph& g = first_stage.graph;
  const P3Context ctx = build_context(g, p3, first_stage.marks);
  const auto deep = ctx.deep_vertices();
  std::vector<char> in(g.vertex_count(), 0);
  for (VertexId x : deep) in[x] = 1;

  std::vector<std::vector<VertexId>> paths;
  std::vector<char> seen(g.vertex_count(), 0);
  for (VertexId s : deep) {
    if (seen[s]) continue;
    std::vector<VertexId> comp{s};
    seen[s] = 1;
    for (std::size_t h = 0; h < comp.size(); ++h)
      for (VertexId y : g.neighbors(comp[h]))
        if (in[y] && !seen[y]) {
          seen[y] = 1;
          comp.push_back(y);
        }
    if (comp.size() < 7) continue;
    auto order = as_path(g, comp, in);
    if (order.empty()) continue;
    if (options_.path_rule == PathRuleMode::kIsolatedInterior &&
        !std::all_of(order.begin() + 1, order.end() - 1, [&](VertexId x) { return g.degree(x) == 2; }))
      continue;
    paths.push_back(std::move(order));
  }

  std::vector<Instance> current{first_stage};
  for (const auto& path : paths) {
    std::vector<Instance> next;
    for (const auto& inst : current) {
      ++stats_.rule_counts.b4_stage2_splits;
      auto children = alternating_split(inst, path);
      keep_feasible(children, next);
    }
    current = std::move(next);
  }
  return current;
}

std::optional<Instance> BranchingEngine::b4_third_stage(const Instance& second_stage, const InducedP3& p3) {
  const Graph& g = second_stage.graph;
  const P3Context ctx = build_context(g, p3);
  const auto component = component_of(g, p3.v);
  std::vector<VertexId> local(g.vertex_count(), -1);
  for (std::size_t i = 0; i < component.size(); ++i) local[component[i]] = static_cast<VertexId>(i);

  AlmostCliqueDecomposition split;
  std::vector<char> in_c(g.vertex_count(), 0);
  for (VertexId x : ctx.c) {
    in_c[x] = 1;
    split.q_set.push_back(local[x]);
  }
  for (VertexId x : component)
    if (!in_c[x]) split.x_set.push_back(local[x]);

  const Graph h = induced_subgraph(g, component);
  ++stats_.rule_counts.b4_stage3_solves;
  const EdgeSet solution = solve_component(h, split);
  if (solution.empty()) throw std::logic_error("rule B4: component of v needs no deletion despite an induced P3");

  std::vector<Edge> global;
  for (const Edge& e : solution) global.emplace_back(component[e.a], component[e.b]);
  if (second_stage.k < static_cast<long long>(global.size())) return std::nullopt;
  Instance out = delete_from(second_stage, std::span<const Edge>(global));
  out.marks.clear();
  return out;
}

void BranchingEngine::audit(const Instance& inst, const InducedP3& p3) {
  const P3Context ctx = build_context(inst.graph, p3);
  const auto report = lemma_audit(ctx, inst.graph, observe_preconditions(ctx, inst.graph));
  ++stats_.rule_counts.lemma_audits;
  if (!report.ok()) throw std::logic_error("lemma audit failed at rule B4 entry: " + report.failures());
}

std::vector<Instance> BranchingEngine::rule_b4(const Instance& inst, const InducedP3& p3) {
  if (!is_induced_p3(inst.graph, p3)) throw PreconditionError("rule B4 needs an induced P3");
  if (find_edge_with_large_f(inst.graph, 4)) throw PreconditionError("rule B4 needs rule B2 to be inapplicable");
  {
    const P3Context ctx = build_context(inst.graph, p3);
    if (!is_clique(inst.graph, ctx.c)) throw PreconditionError("rule B4 needs C to be a clique");
  }
  if (options_.audit_lemmas) audit(inst, p3);
  ++stats_.rule_counts.b4;

  Instance start = inst;
  start.marks.clear();
  std::vector<Instance> out;
  for (auto& first : b4_first_stage(start, p3)) {
    check_deadline();
    for (auto& second : b4_second_stage(first.instance, p3))
      if (auto third = b4_third_stage(second, p3)) out.push_back(std::move(*third));
  }
  return out;
}

std::vector<Instance> BranchingEngine::rule_b5(const Instance& inst, std::span<const VertexId> cycle) {
  if (cycle.size() != 4 || !is_induced_cycle(inst.graph, cycle)) throw PreconditionError("rule B5 needs an induced C4");
  if (find_edge_with_large_f(inst.graph, 4)) throw PreconditionError("rule B5 needs rule B2 to be inapplicable");
  const InducedP3 p3{cycle[0], cycle[1], cycle[2]};
  ++stats_.rule_counts.b5;

  const P3Context ctx = build_context(inst.graph, p3);
  const auto pair = non_adjacent_pair(inst.graph, ctx.c);
  if (!pair) return rule_b4(inst, p3);

  const VertexId outer[] = {p3.u, pair->first, p3.w, pair->second};
  ++stats_.rule_counts.b5_inner_b3;
  std::vector<Instance> out;
  for (auto& child : rule_b3(inst, outer)) {
    if (child.k < 0) continue;
    if (auto e = find_edge_with_large_f(child.graph, 4)) {
      ++stats_.rule_counts.b5_inner_b2;
      auto split = rule_b2(child, *e);
      keep_feasible(split, out);
      continue;
    }
    const P3Context inner = build_context(child.graph, p3);
    const auto inner_pair = non_adjacent_pair(child.graph, inner.c);
    if (!inner_pair) {
      auto delegated = rule_b4(child, p3);
      keep_feasible(delegated, out);
      continue;
    }
    const VertexId again[] = {p3.u, inner_pair->first, p3.w, inner_pair->second};
    ++stats_.rule_counts.b5_inner_b3;
    for (auto& grandchild : rule_b3(child, again)) {
      if (grandchild.k < 0) continue;
      const auto e = find_edge_with_large_f(grandchild.graph, 4);
      if (!e) throw std::logic_error("rule B5: rule B2 not applicable after the second C4 split");
      ++stats_.rule_counts.b5_inner_b2;
      auto split = rule_b2(grandchild, *e);
      keep_feasible(split, out);
    }
  }
  return out;
}

std::vector<Instance> BranchingEngine::expand(const Instance& inst) {
  const Graph& g = inst.graph;
  if (options_.strategy == Strategy::kBaseline2k) {
    const auto p3 = find_induced_p3(g);
    if (!p3) return {};
    ++stats_.rule_counts.p3_branch;
    const Edge left[] = {Edge(p3->u, p3->v)};
    const Edge right[] = {Edge(p3->v, p3->w)};
    return {delete_from(inst, std::span<const Edge>(left)), delete_from(inst, std::span<const Edge>(right))};
  }
  if (auto path = find_path_for_b1(g)) {
    ++stats_.rule_counts.b1;
    return rule_b1(inst, *path);
  }
  if (auto e = find_edge_with_large_f(g, 4)) {
    ++stats_.rule_counts.b2;
    return rule_b2(inst, *e);
  }
  const auto c4 = find_induced_c4(g);
  if (c4 && options_.strategy == Strategy::kBd2011) {
    ++stats_.rule_counts.b3;
    return rule_b3(inst, *c4);
  }
  if (c4) return rule_b5(inst, *c4);
  const auto p3 = find_induced_p3(g);
  if (!p3) return {};
  return rule_b4(inst, *p3);
}

std::optional<std::vector<Edge>> BranchingEngine::search(Instance inst, int depth) {
  check_deadline();
  ++stats_.nodes_expanded;
  stats_.max_depth = std::max(stats_.max_depth, depth);
  ReduceResult reduced = reduce(std::move(inst));
  if (reduced.discarded) ++stats_.rule_counts.reduce;
  if (reduced.outcome == ReduceOutcome::kYes) return std::move(reduced.instance.deleted);
  if (reduced.outcome == ReduceOutcome::kNo) return std::nullopt;

  for (auto& child : expand(reduced.instance)) {
    if (child.k < 0) continue;
    if (auto found = search(std::move(child), depth + 1)) return found;
  }
  return std::nullopt;
}

namespace {

double millis_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

DecisionResult decide(const Graph& g, long long k, const SolveOptions& options) {
  if (k < 0) throw PreconditionError("decide: k must be non-negative");
  const auto start = std::chrono::steady_clock::now();
  BranchingEngine engine(options);
  DecisionResult result;
  try {
    if (auto found = engine.search(Instance::root(g, k))) {
      EdgeSet witness(found->begin(), found->end());
      if (witness.size() != found->size() || !validate_solution(g, witness, k))
        throw std::logic_error("solver returned an invalid witness");
      result.status = SolveStatus::kYes;
      result.witness = std::move(witness);
    } else {
      result.status = SolveStatus::kNo;
    }
  } catch (const SearchTimeout&) {
    result.status = SolveStatus::kTimeout;
  }
  result.stats = engine.stats();
  result.stats.elapsed_ms = millis_since(start);
  return result;
}

MinimumResult minimize(const Graph& g, const SolveOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  MinimumResult result;
  for (long long k = 0;; ++k) {
    DecisionResult step = decide(g, k, options);
    result.stats.merge(step.stats);
    if (step.status == SolveStatus::kTimeout) {
      result.status = SolveStatus::kTimeout;
      break;
    }
    if (step.status == SolveStatus::kYes) {
      result.optimum = k;
      result.witness = std::move(*step.witness);
      break;
    }
  }
  result.stats.elapsed_ms = millis_since(start);
  return result;
}

std::optional<EdgeSet> solve_decision(const Graph& g, long long k, Strategy strategy) {
  SolveOptions options;
  options.strategy = strategy;
  return decide(g, k, options).witness;
}

OracleResult solve_minimum(const Graph& g, Strategy strategy) {
  SolveOptions options;
  options.strategy = strategy;
  MinimumResult r = minimize(g, options);
  return OracleResult{r.optimum, std::move(r.witness)};
}

const char* to_string(Strategy s) {
  switch (s) {
    case Strategy::kBaseline2k: return "baseline2k";
    case Strategy::kBd2011: return "bd2011";
    case Strategy::kNew1404: return "new1404";
  }
  return "?";
}

Strategy parse_strategy(const std::string& name) {
  if (name == "baseline2k") return Strategy::kBaseline2k;
  if (name == "bd2011") return Strategy::kBd2011;
  if (name == "new1404") return Strategy::kNew1404;
  throw std::invalid_argument("unknown strategy '" + name + "' (expected baseline2k, bd2011 or new1404)");
}

const char* to_string(PathRuleMode m) {
  return m == PathRuleMode::kLiteral ? "literal" : "isolated-interior";
}

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::kYes: return "yes";
    case SolveStatus::kNo: return "no";
    case SolveStatus::kTimeout: return "timeout";
  }
  return "?";
}

}  // namespace cdel
