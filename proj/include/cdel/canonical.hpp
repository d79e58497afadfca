#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cdel {

// Small vertex-colored graph (at most 32 vertices) as adjacency masks.
struct ColoredGraph {
  int n = 0;
  std::vector<std::uint32_t> adj;
  std::vector<int> color;
};

// Certificate that is equal for two colored graphs iff they are isomorphic
// by a color-preserving bijection. Color refinement plus individualization,
// minimizing the resulting adjacency string; twins are tried once.
std::string canonical_certificate(const ColoredGraph& g);

}  // namespace cdel
