#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cdel/graph.hpp"

namespace cdel {

// G(n, p) with a mt19937_64 seeded by `seed`.
Graph gnp_graph(int n, double p, std::uint64_t seed);

// Connected G(n, p): redraws (deterministically) until connected.
Graph connected_gnp_graph(int n, double p, std::uint64_t seed);

struct PlantedInstance {
  Graph graph;
  int q = 0;                   // planted upper bound on the optimum
  std::vector<int> sizes;      // clique sizes, vertices numbered clique by clique
  std::vector<Edge> noise;     // the q inter-clique edges
};

// Disjoint cliques of the given sizes plus q distinct random edges between
// different cliques. Deleting the noise edges is a solution, so optimum <= q.
PlantedInstance planted_instance(const std::vector<int>& sizes, int q, std::uint64_t seed);

Graph path_graph(int n);
Graph cycle_graph(int n);

// The 16-vertex graph showing that a first-stage chain can delete all eight
// E_0 edges one by one. Ids: u=0 v=1 w=2, b1..b4=3..6, c1..c4=7..10,
// d1..d6=11..16. N(b4) is taken as {w, b3, c3, c4}.
Graph frontier_chain_counterexample();
std::vector<std::string> frontier_chain_counterexample_notes();

}  // namespace cdel
