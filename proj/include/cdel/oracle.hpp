#pragma once

#include "cdel/graph.hpp"

namespace cdel {

inline constexpr int kOracleMaxVertices = 18;

class GraphTooLarge : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

struct OracleResult {
  long long optimum = 0;
  EdgeSet witness;
};

// Minimum cluster deletion by dynamic programming over vertex subsets:
// best(S) = max over cliques T of S containing min(S) of |E(T)| + best(S \ T).
// Throws GraphTooLarge above kOracleMaxVertices vertices.
OracleResult exact_min_deletion(const Graph& g);

bool exact_decision(const Graph& g, long long k);

}  // namespace cdel
