#include <algorithm>
#include <map>
#include <random>

#include "doctest.h"

#include "cdel/branching.hpp"
#include "cdel/canonical.hpp"
#include "cdel/generators.hpp"
#include "cdel/oracle.hpp"
#include "cdel/p3_structure.hpp"
#include "test_util.hpp"

using namespace cdel;
using cdel::test::make_graph;

namespace {

constexpr Strategy kStrategies[] = {Strategy::kBaseline2k, Strategy::kBd2011, Strategy::kNew1404};

SolveOptions audited(Strategy s) {
  SolveOptions o;
  o.strategy = s;
  o.audit_lemmas = true;
  return o;
}

bool child_solvable(const Instance& child) {
  return child.k >= 0 && exact_min_deletion(child.graph).optimum <= child.k;
}

// A rule is safe if the parent is a YES instance exactly when some child is.
void check_safe(const Instance& parent, const std::vector<Instance>& children) {
  const bool parent_yes = exact_min_deletion(parent.graph).optimum <= parent.k;
  const bool some_child = std::any_of(children.begin(), children.end(), child_solvable);
  CHECK(parent_yes == some_child);
}

// Deleted edges (input ids) of a child minus those of the parent.
std::vector<Edge> new_deletions(const Instance& parent, const Instance& child) {
  return std::vector<Edge>(child.deleted.begin() + static_cast<long>(parent.deleted.size()), child.deleted.end());
}

Graph b5_gadget() {
  // C4 0-1-2-3; C = {4,5,6,7} adjacent to 0,1,2 and to 3; 4-7 and 5-6 missing
  Graph g = make_graph(8, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {4, 5}, {4, 6}, {5, 7}, {6, 7}});
  for (VertexId c = 4; c < 8; ++c)
    for (VertexId a = 0; a < 4; ++a) g.add_edge(a, c);
  return g;
}

}  // namespace

TEST_CASE("reduce") {
  const Graph cluster = make_graph(5, {{0, 1}, {1, 2}, {0, 2}, {3, 4}});
  CHECK(reduce(Instance::root(cluster, 0)).outcome == ReduceOutcome::kYes);
  CHECK(reduce(Instance::root(path_graph(3), 0)).outcome == ReduceOutcome::kNo);
  CHECK(reduce(Instance::root(cluster, -1)).outcome == ReduceOutcome::kNo);

  // P3 on 0..2 plus K4 on 3..6
  Graph g = make_graph(7, {{0, 1}, {1, 2}});
  for (VertexId x = 3; x < 7; ++x)
    for (VertexId y = x + 1; y < 7; ++y) g.add_edge(x, y);
  const ReduceResult r = reduce(Instance::root(g, 1));
  CHECK(r.outcome == ReduceOutcome::kContinue);
  CHECK(r.discarded);
  CHECK(r.instance.graph.vertex_count() == 3);
  CHECK(r.instance.graph.edge_count() == 2);
  CHECK(r.instance.origin == std::vector<VertexId>{0, 1, 2});
}

TEST_CASE("rule B1") {
  const VertexId path[] = {0, 1, 2, 3, 4, 5, 6};
  const auto yes = rule_b1(Instance::root(path_graph(7), 3), path);
  REQUIRE(yes.size() == 2);
  for (const auto& child : yes) {
    CHECK(child.k == 0);
    CHECK(reduce(child).outcome == ReduceOutcome::kYes);
  }
  CHECK(new_deletions(Instance::root(path_graph(7), 3), yes[0]) == std::vector<Edge>{{0, 1}, {2, 3}, {4, 5}});
  CHECK(new_deletions(Instance::root(path_graph(7), 3), yes[1]) == std::vector<Edge>{{1, 2}, {3, 4}, {5, 6}});

  for (const auto& child : rule_b1(Instance::root(path_graph(7), 2), path)) CHECK(reduce(child).outcome == ReduceOutcome::kNo);

  const VertexId broken[] = {0, 1, 2, 3, 4, 5, 6};
  CHECK_THROWS_AS(rule_b1(Instance::root(cycle_graph(7), 3), broken), PreconditionError);
  const VertexId shorter[] = {0, 1, 2, 3, 4, 5};
  CHECK_THROWS_AS(rule_b1(Instance::root(path_graph(7), 3), shorter), PreconditionError);

  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Graph g = gnp_graph(10, 0.2, seed);
    const auto p = find_induced_long_path(g, 7);
    if (!p) continue;
    const Instance root = Instance::root(g, 6);
    for (const auto& child : rule_b1(root, *p)) {
      CHECK(child.k == 3);
      CHECK(child.graph.edge_count() == g.edge_count() - 3);
    }
  }
}

TEST_CASE("literal B1 loses on the long-path trap, isolated-interior does not") {
  const Graph g = cdel::test::long_path_trap();
  CHECK(exact_min_deletion(g).optimum == 3);
  const auto path = find_induced_long_path(g, 7);
  REQUIRE(path);
  CHECK(*path == std::vector<VertexId>{0, 1, 2, 3, 4, 5, 6});
  // both alternating children need at least 5 deletions overall
  for (const auto& child : rule_b1(Instance::root(g, 10), *path)) CHECK(3 + exact_min_deletion(child.graph).optimum >= 5);

  SolveOptions literal = audited(Strategy::kBd2011);
  literal.path_rule = PathRuleMode::kLiteral;
  CHECK(minimize(g, literal).optimum == 5);
  CHECK(decide(g, 3, literal).status == SolveStatus::kNo);

  for (Strategy s : kStrategies) {
    const auto r = minimize(g, audited(s));
    CHECK(r.optimum == 3);
    CHECK(validate_solution(g, r.witness, 3));
  }
}

TEST_CASE("rule B2") {
  // K_{1,5}, center 1
  const Graph star = make_graph(6, {{1, 0}, {1, 2}, {1, 3}, {1, 4}, {1, 5}});
  const auto kids = rule_b2(Instance::root(star, 5), Edge(0, 1));
  REQUIRE(kids.size() == 2);
  CHECK(kids[0].k == 4);
  CHECK(kids[1].k == 1);
  const Graph k14 = make_graph(5, {{1, 0}, {1, 2}, {1, 3}, {1, 4}});
  CHECK_THROWS_AS(rule_b2(Instance::root(k14, 5), Edge(0, 1)), PreconditionError);

  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Graph g = gnp_graph(11, 0.35, seed);
    const auto e = find_edge_with_large_f(g, 4);
    if (!e) continue;
    const Instance root = Instance::root(g, 20);
    const auto children = rule_b2(root, *e);
    CHECK(children[0].k == 19);
    CHECK(children[1].k == 20 - static_cast<long long>(f_set(g, *e).size()));
    const Instance small = Instance::root(g, exact_min_deletion(g).optimum);
    check_safe(small, rule_b2(small, *e));
  }
}

TEST_CASE("rule B3") {
  const VertexId cyc[] = {0, 1, 2, 3};
  for (const auto& child : rule_b3(Instance::root(cycle_graph(4), 2), cyc)) CHECK(reduce(child).outcome == ReduceOutcome::kYes);
  for (const auto& child : rule_b3(Instance::root(cycle_graph(4), 1), cyc)) CHECK(reduce(child).outcome == ReduceOutcome::kNo);
  const VertexId bad[] = {0, 1, 2, 3};
  CHECK_THROWS_AS(rule_b3(Instance::root(path_graph(4), 2), bad), PreconditionError);

  const Graph pendant = make_graph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 4}});
  for (long long k = 0; k <= 5; ++k) check_safe(Instance::root(pendant, k), rule_b3(Instance::root(pendant, k), cyc));
}

TEST_CASE("rule B4 on an isolated P3") {
  BranchingEngine engine(audited(Strategy::kBd2011));
  const auto kids = engine.rule_b4(Instance::root(path_graph(3), 2), {0, 1, 2});
  REQUIRE(kids.size() == 1);
  CHECK(kids[0].k == 1);
  CHECK(kids[0].graph.edge_count() == 1);
  CHECK(kids[0].marks.empty());
  CHECK(engine.stats().rule_counts.b4 == 1);
  CHECK(engine.stats().rule_counts.b4_stage1_splits == 0);
}

TEST_CASE("rule B4 preconditions") {
  BranchingEngine engine(audited(Strategy::kBd2011));
  const Graph star = make_graph(6, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}});
  CHECK_THROWS_AS(engine.rule_b4(Instance::root(star, 3), {1, 0, 2}), PreconditionError);
  // C = {3, 4} not adjacent
  const Graph twin = make_graph(5, {{0, 1}, {1, 2}, {3, 0}, {3, 1}, {3, 2}, {4, 0}, {4, 1}, {4, 2}});
  CHECK_THROWS_AS(engine.rule_b4(Instance::root(twin, 3), {0, 1, 2}), PreconditionError);
}

TEST_CASE("frontier chain counterexample: stage 1 deletes all eight E_0 edges one at a time") {
  BranchingEngine engine(audited(Strategy::kBd2011));
  const Graph g = frontier_chain_counterexample();
  const auto first = engine.b4_first_stage(Instance::root(g, 40), {0, 1, 2});
  const auto chain = std::find_if(first.begin(), first.end(), [](const FirstStageInstance& f) { return f.branch_path == "11111111"; });
  REQUIRE(chain != first.end());
  CHECK(chain->instance.k == 32);
  const P3Context before = build_context(g, {0, 1, 2});
  std::vector<Edge> deleted = chain->instance.deleted;
  std::sort(deleted.begin(), deleted.end());
  CHECK(deleted == before.frontiers[0]);
  std::size_t longest = 0;
  for (const auto& f : first) longest = std::max(longest, f.branch_path.size());
  CHECK(longest >= 8);
  for (const auto& f : first) CHECK_FALSE(build_context(f.instance.graph, {0, 1, 2}, f.instance.marks).j);
}

TEST_CASE("stage 1 produces at most 2^|E_j| instances when j >= 1") {
  int found = 0;
  for (std::uint64_t seed = 0; seed < 200000 && found < 20; ++seed) {
    const Graph g = gnp_graph(10 + static_cast<int>(seed % 8), 0.12 + 0.02 * static_cast<double>(seed % 5), seed);
    if (find_edge_with_large_f(g, 4) || find_induced_long_path(g, 7) || find_induced_c4(g)) continue;
    const auto p3 = find_induced_p3(g);
    if (!p3) continue;
    const P3Context ctx = build_context(g, *p3);
    if (!is_clique(g, ctx.c) || !ctx.j || *ctx.j < 1) continue;
    BranchingEngine engine(audited(Strategy::kBd2011));
    const auto first = engine.b4_first_stage(Instance::root(g, 100), *p3);
    CHECK(first.size() <= (std::size_t{1} << ctx.frontier_size(*ctx.j)));
    ++found;
  }
  CHECK(found == 20);
}

TEST_CASE("rule B4 is safe on random instances where it applies") {
  int applied = 0;
  for (std::uint64_t seed = 0; seed < 3000 && applied < 250; ++seed) {
    const Graph g = gnp_graph(6 + static_cast<int>(seed % 5), 0.3 + 0.1 * static_cast<double>(seed % 4), seed);
    if (find_edge_with_large_f(g, 4)) continue;
    const auto p3 = find_induced_p3(g);
    if (!p3) continue;
    if (!is_clique(g, build_context(g, *p3).c)) continue;
    const long long opt = exact_min_deletion(g).optimum;
    for (long long k : {opt - 1, opt, opt + 1}) {
      if (k < 0) continue;
      BranchingEngine engine(audited(Strategy::kBd2011));
      const Instance root = Instance::root(g, k);
      const auto kids = engine.rule_b4(root, *p3);
      for (const auto& child : kids) {
        CHECK(child.k < k);
        CHECK(child.marks.empty());
      }
      check_safe(root, kids);
    }
    ++applied;
  }
  CHECK(applied == 250);
}

TEST_CASE("rule B5 gadget: both grandchild splits fire") {
  const Graph g = b5_gadget();
  const VertexId cyc[] = {0, 1, 2, 3};
  REQUIRE(is_induced_cycle(g, cyc));
  REQUIRE_FALSE(find_edge_with_large_f(g, 4));
  BranchingEngine engine(audited(Strategy::kNew1404));
  const Instance root = Instance::root(g, 20);
  const auto kids = engine.rule_b5(root, cyc);
  REQUIRE(kids.size() == 8);
  std::vector<int> drops;
  for (const auto& child : kids) drops.push_back(static_cast<int>(20 - child.k));
  CHECK(drops == std::vector<int>{5, 8, 5, 8, 5, 8, 5, 8});
  CHECK(engine.stats().rule_counts.b5_inner_b3 == 3);
  CHECK(engine.stats().rule_counts.b5_inner_b2 == 4);
  const long long opt = exact_min_deletion(g).optimum;
  for (long long k = std::max(0LL, opt - 2); k <= opt + 2; ++k) {
    BranchingEngine e(audited(Strategy::kNew1404));
    check_safe(Instance::root(g, k), e.rule_b5(Instance::root(g, k), cyc));
  }
}

TEST_CASE("rule B5 with C a clique matches rule B4") {
  int compared = 0;
  for (std::uint64_t seed = 0; seed < 20000 && compared < 60; ++seed) {
    const Graph g = gnp_graph(7 + static_cast<int>(seed % 4), 0.45, seed);
    if (find_edge_with_large_f(g, 4)) continue;
    const auto c4 = find_induced_c4(g);
    if (!c4) continue;
    const InducedP3 p3{(*c4)[0], (*c4)[1], (*c4)[2]};
    if (!is_clique(g, build_context(g, p3).c)) continue;
    BranchingEngine a(audited(Strategy::kNew1404)), b(audited(Strategy::kNew1404));
    const auto via_b5 = a.rule_b5(Instance::root(g, 10), *c4);
    const auto via_b4 = b.rule_b4(Instance::root(g, 10), p3);
    REQUIRE(via_b5.size() == via_b4.size());
    for (std::size_t i = 0; i < via_b5.size(); ++i) {
      CHECK(via_b5[i].graph == via_b4[i].graph);
      CHECK(via_b5[i].k == via_b4[i].k);
    }
    ++compared;
  }
  CHECK(compared == 60);
}

// Drops below 3 only come from the delegation to rule B4 when C is a clique,
// so the bound is checked on the other branch.
TEST_CASE("rule B5 leaves drop the budget by at least 3 when C is not a clique, and are safe") {
  int applied = 0;
  for (std::uint64_t seed = 0; seed < 40000 && applied < 120; ++seed) {
    const Graph g = gnp_graph(7 + static_cast<int>(seed % 3), 0.7 + 0.05 * static_cast<double>(seed % 3), seed);
    if (find_edge_with_large_f(g, 4) || find_isolated_interior_path(g, 7)) continue;
    const auto c4 = find_induced_c4(g);
    if (!c4) continue;
    if (is_clique(g, build_context(g, InducedP3{(*c4)[0], (*c4)[1], (*c4)[2]}).c)) continue;
    const long long opt = exact_min_deletion(g).optimum;
    BranchingEngine engine(audited(Strategy::kNew1404));
    const Instance root = Instance::root(g, opt);
    const auto kids = engine.rule_b5(root, *c4);
    for (const auto& child : kids) CHECK(opt - child.k >= 3);
    check_safe(root, kids);
    if (opt > 0) {
      BranchingEngine tight(audited(Strategy::kNew1404));
      const Instance below = Instance::root(g, opt - 1);
      check_safe(below, tight.rule_b5(below, *c4));
    }
    ++applied;
  }
  CHECK(applied == 120);
}

TEST_CASE("rule B5 is safe when it delegates") {
  int applied = 0;
  for (std::uint64_t seed = 0; seed < 6000 && applied < 100; ++seed) {
    const Graph g = gnp_graph(7 + static_cast<int>(seed % 5), 0.4 + 0.1 * static_cast<double>(seed % 3), seed);
    if (find_edge_with_large_f(g, 4) || find_isolated_interior_path(g, 7)) continue;
    const auto c4 = find_induced_c4(g);
    if (!c4) continue;
    const long long opt = exact_min_deletion(g).optimum;
    for (long long k : {opt - 1, opt}) {
      if (k < 0) continue;
      BranchingEngine engine(audited(Strategy::kNew1404));
      const Instance root = Instance::root(g, k);
      const auto kids = engine.rule_b5(root, *c4);
      for (const auto& child : kids) CHECK(child.k < k);
      check_safe(root, kids);
    }
    ++applied;
  }
  CHECK(applied == 100);
}

TEST_CASE("solve_decision fixed cases") {
  // two triangles joined by one edge
  const Graph g = make_graph(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {2, 3}});
  for (Strategy s : kStrategies) {
    const auto w = solve_decision(g, 1, s);
    REQUIRE(w);
    CHECK(w->size() == 1);
    CHECK_FALSE(solve_decision(cycle_graph(5), 2, s));
    const auto c5 = solve_decision(cycle_graph(5), 3, s);
    REQUIRE(c5);
    CHECK(validate_solution(cycle_graph(5), *c5, 3));
  }
  CHECK_THROWS_AS(decide(g, -1), PreconditionError);
}

TEST_CASE("all strategies agree with the oracle on every graph with n <= 7 up to isomorphism") {
  std::map<std::string, Graph> classes;
  for (int n = 1; n <= 7; ++n)
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << cdel::test::pair_count(n)); ++code) {
      const Graph g = cdel::test::graph_from_code(n, code);
      ColoredGraph cg;
      cg.n = n;
      cg.adj.assign(n, 0);
      cg.color.assign(n, 0);
      for (const Edge& e : g.edges()) {
        cg.adj[e.a] |= 1u << e.b;
        cg.adj[e.b] |= 1u << e.a;
      }
      classes.try_emplace(canonical_certificate(cg), g);
    }
  // 1 + 2 + 4 + 11 + 34 + 156 + 1044 unlabeled graphs
  CHECK(classes.size() == 1252);
  for (const auto& [cert, g] : classes) {
    const long long opt = exact_min_deletion(g).optimum;
    for (Strategy s : kStrategies)
      for (long long k = 0; k <= static_cast<long long>(g.edge_count()); ++k) {
        const DecisionResult r = decide(g, k, audited(s));
        REQUIRE((r.status == SolveStatus::kYes) == (k >= opt));
        if (r.witness) REQUIRE(validate_solution(g, *r.witness, k));
      }
  }
}

TEST_CASE("solve_minimum") {
  const Graph cluster = make_graph(5, {{0, 1}, {1, 2}, {0, 2}, {3, 4}});
  for (Strategy s : kStrategies) CHECK(solve_minimum(cluster, s).optimum == 0);
  const PlantedInstance planted = planted_instance({5, 5, 5}, 4, 11);
  for (Strategy s : kStrategies) CHECK(solve_minimum(planted.graph, s).optimum <= 4);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Graph g = gnp_graph(9, 0.5, seed);
    const long long opt = exact_min_deletion(g).optimum;
    for (Strategy s : kStrategies) {
      const OracleResult r = solve_minimum(g, s);
      CHECK(r.optimum == opt);
      CHECK(validate_solution(g, r.witness, opt));
    }
  }
}

TEST_CASE("search statistics are deterministic") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph g = gnp_graph(12, 0.4, seed);
    for (Strategy s : kStrategies) {
      const MinimumResult a = minimize(g, audited(s));
      const MinimumResult b = minimize(g, audited(s));
      CHECK(a.stats.same_counters(b.stats));
      CHECK(a.witness == b.witness);
    }
  }
}

TEST_CASE("stats merge adds counters and keeps the deepest tree") {
  SearchStats a, b;
  a.nodes_expanded = 3;
  a.rule_counts.b2 = 1;
  a.max_depth = 4;
  b.nodes_expanded = 5;
  b.rule_counts.b2 = 2;
  b.rule_counts.b5 = 7;
  b.max_depth = 2;
  a.merge(b);
  CHECK(a.nodes_expanded == 8);
  CHECK(a.rule_counts.b2 == 3);
  CHECK(a.rule_counts.b5 == 7);
  CHECK(a.max_depth == 4);
}

TEST_CASE("a passed deadline reports timeout") {
  SolveOptions o;
  o.deadline = std::chrono::steady_clock::now() - std::chrono::seconds(1);
  const DecisionResult r = decide(gnp_graph(12, 0.5, 1), 3, o);
  CHECK(r.status == SolveStatus::kTimeout);
  CHECK_FALSE(r.witness);
  CHECK(minimize(gnp_graph(12, 0.5, 1), o).status == SolveStatus::kTimeout);
}

TEST_CASE("strategy names") {
  for (Strategy s : kStrategies) CHECK(parse_strategy(to_string(s)) == s);
  CHECK_THROWS_AS(parse_strategy("fast"), std::invalid_argument);
}
