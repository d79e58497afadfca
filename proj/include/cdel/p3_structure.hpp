#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cdel/graph.hpp"

namespace cdel {

enum class Region : std::int8_t { kA, kLayer, kC, kD, kOutside };

inline constexpr int kNoLevel = -2;

// Layered decomposition of a graph around an induced P3 u-v-w.
//
//   A      = {u, v, w}
//   B      = vertices outside A with one or two neighbors in A
//   B_u    = b in B adjacent to exactly one of u, v   (B_w symmetric)
//   C      = vertices adjacent to all of A
//   D      = vertices outside A, B, C with a neighbor in C
//   B_i    = vertices outside A, B, C, D at distance i from B, measured
//            through vertices outside A, C, D (so every B_i vertex has a
//            neighbor in B_{i-1})
//   E_i    = edges between B_i and B_{i+1}; E_1 omits marked edges
//   j      = least i such that some e in E_i has |F_e| >= 3
//
// layers[0] is B, layers[i] is B_i; the list stops before the first empty
// layer (layers[0] is always present, possibly empty). frontiers[i] is E_i.
struct P3Context {
  InducedP3 p3;
  std::vector<VertexId> a;
  std::vector<VertexId> b;
  std::vector<VertexId> b_u;
  std::vector<VertexId> b_w;
  std::vector<VertexId> c;
  std::vector<VertexId> d;
  std::vector<std::vector<VertexId>> layers;
  std::vector<std::vector<Edge>> frontiers;
  std::optional<int> j;  // nullopt means infinity
  EdgeSet marks;

  std::vector<Region> region;
  std::vector<int> level;  // -1 for A, i for B_i, kNoLevel otherwise

  int layer_of(VertexId x) const { return level[x]; }
  bool j_at_least(int bound) const { return !j || *j >= bound; }
  std::size_t frontier_size(int i) const;

  // Neighbors of x (x in some B_i, i >= 0) in B_{i+1}, B_i and B_{i-1};
  // B_{-1} is A.
  std::vector<VertexId> next_neighbors(const Graph& g, VertexId x) const;
  std::vector<VertexId> same_neighbors(const Graph& g, VertexId x) const;
  std::vector<VertexId> prev_neighbors(const Graph& g, VertexId x) const;

  // Union of B_i for i >= 2.
  std::vector<VertexId> deep_vertices() const;
};

P3Context build_context(const Graph& g, const InducedP3& p3, const EdgeSet& marks = {});

// A u B u C u D u all layers. When rule B2 is inapplicable and C is a clique
// the result must equal the component of v; a mismatch throws logic_error.
std::vector<VertexId> component_closure(const P3Context& ctx, const Graph& g);

// Hypotheses under which the structural lemmas are checked. The caller knows
// which rules are exhausted; the audit does not re-derive them.
struct AuditPreconditions {
  bool b1_inapplicable = false;
  bool b2_inapplicable = false;
  bool no_induced_c4 = false;
  bool c_is_clique = false;
};

enum class Verdict { kSkipped, kPassed, kFailed };

struct LemmaVerdict {
  std::string name;
  Verdict verdict = Verdict::kSkipped;
  std::string witness;  // non-empty whenever verdict is kFailed
};

struct LemmaAuditReport {
  std::vector<LemmaVerdict> verdicts;
  int deep_path_count = 0;  // paths counted by the B_2..B_j check

  bool ok() const;
  const LemmaVerdict* find(const std::string& name) const;
  std::string failures() const;
};

LemmaAuditReport lemma_audit(const P3Context& ctx, const Graph& g, const AuditPreconditions& pre);

// Hypotheses that hold for g with c_is_clique evaluated against ctx; rule
// checks are evaluated directly on g. Used by tests and the analyze command.
AuditPreconditions observe_preconditions(const P3Context& ctx, const Graph& g);

const char* to_string(Region r);
const char* to_string(Verdict v);

}  // namespace cdel
