#include "cdel/generators.hpp"

#include <random>
#include <stdexcept>

namespace cdel {

Graph gnp_graph(int n, double p, std::uint64_t seed) {
  if (n < 0) throw PreconditionError("gnp: n must be non-negative");
  if (!(p >= 0.0 && p <= 1.0)) throw PreconditionError("gnp: p must lie in [0, 1]");
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  Graph g(n);
  for (VertexId x = 0; x < n; ++x)
    for (VertexId y = x + 1; y < n; ++y)
      if (coin(rng)) g.add_edge(x, y);
  return g;
}

Graph connected_gnp_graph(int n, double p, std::uint64_t seed) {
  if (n > 1 && p <= 0.0) throw PreconditionError("connected gnp: p must be positive");
  std::mt19937_64 seeds(seed);
  for (;;) {
    Graph g = gnp_graph(n, p, seeds());
    if (n == 0 || component_of(g, 0).size() == static_cast<std::size_t>(n)) return g;
  }
}

PlantedInstance planted_instance(const std::vector<int>& sizes, int q, std::uint64_t seed) {
  if (sizes.size() < 2) throw PreconditionError("planted: need at least two cliques");
  if (q < 0) throw PreconditionError("planted: q must be non-negative");
  int n = 0;
  std::vector<int> owner;
  for (std::size_t c = 0; c < sizes.size(); ++c) {
    if (sizes[c] < 1) throw PreconditionError("planted: clique sizes must be positive");
    owner.insert(owner.end(), sizes[c], static_cast<int>(c));
    n += sizes[c];
  }
  long long cross = 0;
  for (std::size_t a = 0; a < sizes.size(); ++a)
    for (std::size_t b = a + 1; b < sizes.size(); ++b) cross += static_cast<long long>(sizes[a]) * sizes[b];
  if (q > cross) throw PreconditionError("planted: q exceeds the number of inter-clique pairs");

  PlantedInstance out;
  out.q = q;
  out.sizes = sizes;
  out.graph = Graph(n);
  for (VertexId x = 0; x < n; ++x)
    for (VertexId y = x + 1; y < n; ++y)
      if (owner[x] == owner[y]) out.graph.add_edge(x, y);

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<VertexId> pick(0, n - 1);
  while (static_cast<int>(out.noise.size()) < q) {
    const VertexId x = pick(rng), y = pick(rng);
    if (owner[x] == owner[y] || out.graph.has_edge(x, y)) continue;
    out.graph.add_edge(x, y);
    out.noise.emplace_back(x, y);
  }
  return out;
}

Graph path_graph(int n) {
  if (n < 0) throw PreconditionError("path: n must be non-negative");
  Graph g(n);
  for (VertexId x = 0; x + 1 < n; ++x) g.add_edge(x, x + 1);
  return g;
}

Graph cycle_graph(int n) {
  if (n < 3) throw PreconditionError("cycle: n must be at least 3");
  Graph g = path_graph(n);
  g.add_edge(n - 1, 0);
  return g;
}

Graph frontier_chain_counterexample() {
  enum : VertexId { u, v, w, b1, b2, b3, b4, c1, c2, c3, c4, d1, d2, d3, d4, d5, d6, count };
  const Edge edges[] = {
      {u, v},   {v, w},   {u, b1},  {u, b2},  {b1, b2}, {b1, c1}, {b1, c2}, {b2, c1},
      {b2, c2}, {c1, c2}, {c1, d1}, {c1, d2}, {c2, d3}, {w, b3},  {w, b4},  {b3, b4},
      {b3, c3}, {b3, c4}, {b4, c3}, {b4, c4}, {c3, c4}, {c3, d4}, {c3, d5}, {c4, d6},
  };
  return Graph::from_edges(count, edges);
}

std::vector<std::string> frontier_chain_counterexample_notes() {
  return {
      "frontier-chain counterexample: eight E_0 edges deleted one at a time",
      "ids: u=0 v=1 w=2 b1..b4=3..6 c1..c4=7..10 d1..d6=11..16",
      "the source lists N(b4) = {w, b3, c4, c4}; read here as {w, b3, c3, c4},",
      "the only reading consistent with the listed N(c3) and N(c4)",
  };
}

}  // namespace cdel
