#include "cdel/oracle.hpp"

#include <bit>
#include <cstdint>
#include <vector>

namespace cdel {

namespace {

struct SubsetTable {
  std::vector<std::uint32_t> adj;
  std::vector<std::uint8_t> best;
  std::vector<std::uint32_t> choice;

  void visit_cliques(std::uint32_t mask, std::uint32_t clique, int size, std::uint32_t cand) {
    const int value = size * (size - 1) / 2 + best[mask & ~clique];
    if (value > best[mask] || choice[mask] == 0) {
      best[mask] = static_cast<std::uint8_t>(value);
      choice[mask] = clique;
    }
    while (cand) {
      const std::uint32_t x = cand & (~cand + 1);
      cand ^= x;
      visit_cliques(mask, clique | x, size + 1, cand & adj[std::countr_zero(x)]);
    }
  }
};

}  // namespace

OracleResult exact_min_deletion(const Graph& g) {
  const int n = g.vertex_count();
  if (n > kOracleMaxVertices)
    throw GraphTooLarge("oracle handles at most " + std::to_string(kOracleMaxVertices) + " vertices, got " +
                        std::to_string(n));
  SubsetTable t;
  t.adj.assign(n, 0);
  for (const Edge& e : g.edges()) {
    t.adj[e.a] |= std::uint32_t{1} << e.b;
    t.adj[e.b] |= std::uint32_t{1} << e.a;
  }
  const std::uint32_t full = n == 0 ? 0 : (std::uint32_t{1} << n) - 1;
  t.best.assign(std::size_t{full} + 1, 0);
  t.choice.assign(std::size_t{full} + 1, 0);
  for (std::uint32_t mask = 1; mask <= full && mask != 0; ++mask) {
    const int low = std::countr_zero(mask);
    const std::uint32_t bit = std::uint32_t{1} << low;
    t.visit_cliques(mask, bit, 1, mask & t.adj[low] & ~bit);
  }

  OracleResult result;
  std::vector<int> cluster(n, -1);
  int id = 0;
  for (std::uint32_t mask = full; mask; mask &= ~t.choice[mask], ++id)
    for (std::uint32_t c = t.choice[mask]; c; c &= c - 1) cluster[std::countr_zero(c)] = id;
  for (const Edge& e : g.edges())
    if (cluster[e.a] != cluster[e.b]) result.witness.insert(e);
  result.optimum = static_cast<long long>(result.witness.size());
  if (result.optimum != static_cast<long long>(g.edge_count()) - t.best[full])
    throw std::logic_error("oracle: witness size disagrees with table optimum");
  return result;
}

bool exact_decision(const Graph& g, long long k) {
  if (k < 0) return false;
  return exact_min_deletion(g).optimum <= k;
}

}  // namespace cdel
