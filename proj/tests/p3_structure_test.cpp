#include <algorithm>
#include <map>
#include <random>

#include "doctest.h"

#include "cdel/generators.hpp"
#include "cdel/p3_structure.hpp"
#include "test_util.hpp"

using namespace cdel;
using cdel::test::make_graph;

namespace {

std::vector<VertexId> sorted(std::vector<VertexId> v) {
  std::sort(v.begin(), v.end());
  return v;
}

// Recomputes every set straight from the definitions; distances come from
// repeated relaxation rather than a queue.
void check_against_definitions(const Graph& g, const P3Context& ctx, const EdgeSet& marks) {
  const int n = g.vertex_count();
  const auto [u, v, w] = ctx.p3;
  std::vector<VertexId> a{u, v, w}, b, bu, bw, c, d;
  std::vector<char> special(n, 0);
  for (VertexId x : a) special[x] = 1;
  for (VertexId x = 0; x < n; ++x) {
    if (special[x]) continue;
    const int cnt = g.has_edge(x, u) + g.has_edge(x, v) + g.has_edge(x, w);
    if (cnt == 3) c.push_back(x);
    if (cnt == 1 || cnt == 2) b.push_back(x);
    if ((cnt == 1 || cnt == 2) && g.has_edge(x, u) != g.has_edge(x, v)) bu.push_back(x);
    if ((cnt == 1 || cnt == 2) && g.has_edge(x, w) != g.has_edge(x, v)) bw.push_back(x);
  }
  for (VertexId x : c) special[x] = 1;
  for (VertexId x : b) special[x] = 1;
  for (VertexId x = 0; x < n; ++x)
    if (!special[x] && std::any_of(c.begin(), c.end(), [&](VertexId y) { return g.has_edge(x, y); })) d.push_back(x);
  for (VertexId x : d) special[x] = 1;

  CHECK(sorted(ctx.a) == sorted(a));
  CHECK(sorted(ctx.b) == b);
  CHECK(sorted(ctx.b_u) == bu);
  CHECK(sorted(ctx.b_w) == bw);
  CHECK(sorted(ctx.c) == c);
  CHECK(sorted(ctx.d) == d);

  // distance to B through vertices outside A, C, D
  const int inf = 1 << 20;
  std::vector<int> dist(n, inf);
  for (VertexId x : b) dist[x] = 0;
  for (bool changed = true; changed;) {
    changed = false;
    for (const Edge& e : g.edges())
      for (auto [x, y] : {std::pair{e.a, e.b}, std::pair{e.b, e.a}}) {
        const bool y_free = std::find(b.begin(), b.end(), y) != b.end() || !special[y];
        if (dist[x] < inf && y_free && dist[x] + 1 < dist[y]) {
          dist[y] = dist[x] + 1;
          changed = true;
        }
      }
  }
  std::map<int, std::vector<VertexId>> by_level;
  for (VertexId x = 0; x < n; ++x)
    if (dist[x] < inf) by_level[dist[x]].push_back(x);
  REQUIRE(ctx.layers.size() == std::max<std::size_t>(1, by_level.size()));
  for (const auto& [i, members] : by_level) CHECK(sorted(ctx.layers[i]) == members);

  // frontiers and j
  for (std::size_t i = 0; i + 1 < ctx.layers.size(); ++i) {
    std::vector<Edge> expect;
    for (const Edge& e : g.edges()) {
      const bool across = (dist[e.a] == static_cast<int>(i) && dist[e.b] == static_cast<int>(i) + 1) ||
                          (dist[e.b] == static_cast<int>(i) && dist[e.a] == static_cast<int>(i) + 1);
      if (across && !(i == 1 && marks.contains(e))) expect.push_back(e);
    }
    CHECK(ctx.frontiers[i] == expect);
  }
  std::optional<int> j;
  for (std::size_t i = 0; i < ctx.frontiers.size() && !j; ++i)
    for (const Edge& e : ctx.frontiers[i])
      if (f_set(g, e).size() >= 3) j = static_cast<int>(i);
  CHECK(ctx.j == j);
  if (ctx.j)
    for (int i = 0; i < *ctx.j; ++i)
      for (const Edge& e : ctx.frontiers[i]) CHECK(f_set_size(g, e) <= 2);

  // pairwise disjoint regions
  std::vector<int> seen(n, 0);
  for (VertexId x : ctx.a) ++seen[x];
  for (VertexId x : ctx.c) ++seen[x];
  for (VertexId x : ctx.d) ++seen[x];
  for (const auto& layer : ctx.layers)
    for (VertexId x : layer) ++seen[x];
  for (VertexId x = 0; x < n; ++x) CHECK(seen[x] <= 1);
}

}  // namespace

TEST_CASE("isolated P3") {
  const Graph g = make_graph(3, {{0, 1}, {1, 2}});
  const P3Context ctx = build_context(g, {0, 1, 2});
  CHECK(ctx.b.empty());
  CHECK(ctx.c.empty());
  CHECK(ctx.d.empty());
  CHECK(ctx.layers.size() == 1);
  CHECK(ctx.layers[0].empty());
  CHECK_FALSE(ctx.j);
  CHECK(component_closure(ctx, g) == std::vector<VertexId>{0, 1, 2});
}

TEST_CASE("rejects a non-induced P3 and foreign marks") {
  const Graph tri = make_graph(3, {{0, 1}, {1, 2}, {0, 2}});
  CHECK_THROWS_AS(build_context(tri, {0, 1, 2}), PreconditionError);
  const Graph p3 = make_graph(4, {{0, 1}, {1, 2}});
  CHECK_THROWS_AS(build_context(p3, {0, 1, 2}, EdgeSet{Edge(2, 3)}), PreconditionError);
  CHECK_THROWS_AS(build_context(p3, {1, 0, 2}), PreconditionError);
}

TEST_CASE("frontier chain counterexample: layer sizes") {
  const Graph g = frontier_chain_counterexample();
  const P3Context ctx = build_context(g, {0, 1, 2});
  CHECK(ctx.b.size() == 4);
  REQUIRE(ctx.layers.size() >= 3);
  CHECK(ctx.layers[1].size() == 4);
  CHECK(ctx.layers[2].size() == 6);
  CHECK(ctx.frontier_size(0) == 8);
  CHECK(ctx.c.empty());
  check_against_definitions(g, ctx, {});
}

TEST_CASE("component closure adds C and D") {
  // P3 0-1-2, vertex 3 adjacent to all of it, pendant 4 on 3
  const Graph g = make_graph(5, {{0, 1}, {1, 2}, {3, 0}, {3, 1}, {3, 2}, {3, 4}});
  const P3Context ctx = build_context(g, {0, 1, 2});
  CHECK(ctx.c == std::vector<VertexId>{3});
  CHECK(ctx.d == std::vector<VertexId>{4});
  CHECK(component_closure(ctx, g) == std::vector<VertexId>{0, 1, 2, 3, 4});
}

TEST_CASE("random graphs: context matches the definitions") {
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    const int n = 5 + static_cast<int>(seed % 14);
    const Graph g = gnp_graph(n, 0.12 + 0.05 * static_cast<double>(seed % 7), seed);
    const auto p3 = find_induced_p3(g);
    if (!p3) continue;
    const P3Context ctx = build_context(g, *p3);
    check_against_definitions(g, ctx, {});
    const auto closure = component_closure(ctx, g);
    if (!find_edge_with_large_f(g, 4) && is_clique(g, ctx.c)) CHECK(closure == component_of(g, p3->v));

    // marks on E_1 edges: never grow E_1, never move j from 1 to 0
    if (ctx.frontiers.size() > 1 && !ctx.frontiers[1].empty()) {
      EdgeSet marks{ctx.frontiers[1].front()};
      const P3Context marked = build_context(g, *p3, marks);
      check_against_definitions(g, marked, marks);
      CHECK(marked.frontier_size(1) < ctx.frontier_size(1));
      if (ctx.j && *ctx.j >= 1) CHECK((!marked.j || *marked.j >= 1));
      if (ctx.j == 0) CHECK(marked.j == 0);
    }
  }
}

TEST_CASE("lemma audit: isolated P3 passes vacuously") {
  const Graph g = make_graph(3, {{0, 1}, {1, 2}});
  const P3Context ctx = build_context(g, {0, 1, 2});
  const auto report = lemma_audit(ctx, g, {true, true, true, true});
  CHECK(report.ok());
  for (const auto& v : report.verdicts) CHECK(v.verdict == Verdict::kPassed);
}

TEST_CASE("lemma audit: hypotheses gate the checks") {
  // star K_{1,5} with center 0; P3 = 1-0-2
  const Graph star = make_graph(6, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}});
  const P3Context ctx = build_context(star, {1, 0, 2});
  const auto pre = observe_preconditions(ctx, star);
  CHECK_FALSE(pre.b2_inapplicable);
  const auto report = lemma_audit(ctx, star, pre);
  const auto* l2 = report.find("b_side_sizes");
  REQUIRE(l2);
  CHECK(l2->verdict == Verdict::kSkipped);
  CHECK(report.ok());
}

TEST_CASE("lemma audit: forced hypotheses expose violations with witnesses") {
  // |B_u| = 3 via three pendants on u; claims b2_inapplicable falsely
  const Graph g = make_graph(6, {{0, 1}, {1, 2}, {0, 3}, {0, 4}, {0, 5}});
  const P3Context ctx = build_context(g, {0, 1, 2});
  const auto report = lemma_audit(ctx, g, {true, true, true, true});
  const auto* l2 = report.find("b_side_sizes");
  REQUIRE(l2);
  CHECK(l2->verdict == Verdict::kFailed);
  CHECK_FALSE(l2->witness.empty());
  CHECK_FALSE(report.ok());
}

TEST_CASE("lemma audit passes on graphs where the rules are exhausted") {
  std::mt19937_64 rng(99);
  int audited = 0;
  for (std::uint64_t seed = 0; audited < 300 && seed < 5000; ++seed) {
    Graph g = gnp_graph(8 + static_cast<int>(seed % 8), 0.3 + 0.05 * static_cast<double>(seed % 5), seed);
    for (;;) {
      std::optional<Edge> cut;
      if (auto e = find_edge_with_large_f(g, 4)) cut = *e;
      else if (auto c = find_induced_c4(g)) cut = Edge((*c)[0], (*c)[1]);
      else if (auto p = find_induced_long_path(g, 7)) cut = Edge((*p)[0], (*p)[1]);
      if (!cut) break;
      g.remove_edge(cut->a, cut->b);
    }
    const auto p3 = find_induced_p3(g);
    if (!p3) continue;
    const P3Context ctx = build_context(g, *p3);
    const auto pre = observe_preconditions(ctx, g);
    REQUIRE(pre.b1_inapplicable);
    REQUIRE(pre.b2_inapplicable);
    REQUIRE(pre.no_induced_c4);
    const auto report = lemma_audit(ctx, g, pre);
    INFO("seed " << seed << ": " << report.failures());
    CHECK(report.ok());
    ++audited;
  }
  CHECK(audited == 300);
}
