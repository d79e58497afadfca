#pragma once

#include <optional>
#include <vector>

#include "cdel/graph.hpp"

namespace cdel {

// V(g) = x_set + q_set (disjoint) with q_set inducing a complete graph.
struct AlmostCliqueDecomposition {
  std::vector<VertexId> x_set;
  std::vector<VertexId> q_set;
};

// Smallest X with |X| <= alpha whose removal leaves a clique (a vertex cover
// of the complement found by bounded branching), or nullopt.
std::optional<AlmostCliqueDecomposition> decompose(const Graph& g, int alpha);

void check_decomposition(const Graph& g, const AlmostCliqueDecomposition& d);

enum class AlmostCliqueEngine { kAuto, kSubsetDp, kPartition };

inline constexpr int kSubsetDpMaxVertices = 20;
inline constexpr int kAutoSubsetDpVertices = 16;

// Minimum edge set S with g - S a cluster graph.
//
// kSubsetDp peels off the clique holding the least unassigned vertex,
// memoized over vertex subsets (at most kSubsetDpMaxVertices vertices).
// kPartition enumerates partitions of X into cliques; each Q vertex then joins
// a compatible X-group or the single all-Q cluster, with the group sizes
// enumerated and realized by bipartite matching. kAuto picks the subset DP up
// to kAutoSubsetDpVertices vertices.
EdgeSet solve_component(const Graph& g, const AlmostCliqueDecomposition& d,
                        AlmostCliqueEngine engine = AlmostCliqueEngine::kAuto);

}  // namespace cdel
