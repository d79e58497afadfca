#pragma once

#include <chrono>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cdel/graph.hpp"
#include "cdel/oracle.hpp"

namespace cdel {

enum class Strategy { kBaseline2k, kBd2011, kNew1404 };

// Which induced paths rule B1 may branch on. kLiteral accepts any induced
// path on 7 vertices. kIsolatedInterior additionally requires every interior
// path vertex to have degree 2 in the whole graph; the literal rule is not
// safe in general (see tests/branching_test.cpp, "literal B1 loses").
enum class PathRuleMode { kLiteral, kIsolatedInterior };

#ifdef NDEBUG
inline constexpr bool kAuditByDefault = false;
#else
inline constexpr bool kAuditByDefault = true;
#endif

struct SolveOptions {
  Strategy strategy = Strategy::kNew1404;
  PathRuleMode path_rule = PathRuleMode::kIsolatedInterior;
  // Run the structural lemma audit at every rule B4 entry; a failure throws.
  bool audit_lemmas = kAuditByDefault;
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

struct RuleCounts {
  long long p3_branch = 0;  // baseline2k's naive split
  long long b1 = 0;
  long long b2 = 0;
  long long b3 = 0;
  long long b4 = 0;
  long long b5 = 0;
  long long reduce = 0;
  long long b4_stage1_splits = 0;
  long long b4_stage2_splits = 0;
  long long b4_stage3_solves = 0;
  long long b5_inner_b3 = 0;
  long long b5_inner_b2 = 0;
  long long lemma_audits = 0;

  bool operator==(const RuleCounts&) const = default;
};

struct SearchStats {
  long long nodes_expanded = 0;
  RuleCounts rule_counts;
  int max_depth = 0;
  double elapsed_ms = 0;

  // Counters add, max_depth takes the maximum.
  void merge(const SearchStats& other);
  bool same_counters(const SearchStats& other) const;
};

// A search-tree node. Vertex ids of `graph` are local; `origin` maps them to
// ids of the input graph and `deleted` records every deletion so far in input
// ids, so budget = k_input - |deleted|. Marks only live inside one rule B4
// application.
struct Instance {
  Graph graph;
  long long k = 0;
  EdgeSet marks;
  std::vector<VertexId> origin;
  std::vector<Edge> deleted;

  static Instance root(const Graph& g, long long k);
};

// New instance with the given (local) edges removed and k lowered by their count.
Instance delete_from(const Instance& inst, std::span<const Edge> edges);
Instance delete_from(const Instance& inst, const EdgeSet& edges);

enum class ReduceOutcome { kContinue, kYes, kNo };

struct ReduceResult {
  ReduceOutcome outcome = ReduceOutcome::kContinue;
  Instance instance;
  bool discarded = false;  // some clique component was dropped
};

// Drops clique components; YES when what remains is a cluster graph with
// k >= 0, NO when k < 0 or k == 0 with an induced P3 left.
ReduceResult reduce(Instance inst);

// The three simple rules return both children; children with negative
// budget are NO leaves for the caller.
std::vector<Instance> rule_b1(const Instance& inst, std::span<const VertexId> path);
std::vector<Instance> rule_b2(const Instance& inst, const Edge& e);
std::vector<Instance> rule_b3(const Instance& inst, std::span<const VertexId> cycle);

struct FirstStageInstance {
  Instance instance;
  std::string branch_path;  // '1' = deleted {e}, '2' = deleted F_e, per split
};

class BranchingEngine {
 public:
  explicit BranchingEngine(SolveOptions options = {});

  // Third-stage instances of rule B4 on the given P3. Requires rule B2 to be
  // inapplicable and C to be a clique.
  std::vector<Instance> rule_b4(const Instance& inst, const InducedP3& p3);

  // Rule B5 on an induced C4 (u, v, w, u').
  std::vector<Instance> rule_b5(const Instance& inst, std::span<const VertexId> cycle);

  // Stage 1 of rule B4: split on the least E_j edge with |F_e| >= 3 until
  // j is infinite. No precondition on the graph beyond p3 being induced.
  std::vector<FirstStageInstance> b4_first_stage(const Instance& inst, const InducedP3& p3);

  // Stage 2: rule B1 on every path component of G[B_2 u B_3 u ...] with at
  // least 7 vertices (subject to the path-rule mode).
  std::vector<Instance> b4_second_stage(const Instance& first_stage, const InducedP3& p3);

  // Stage 3: solve the component of v exactly; nullopt if the budget runs out.
  std::optional<Instance> b4_third_stage(const Instance& second_stage, const InducedP3& p3);

  // Children of one search node under the configured strategy.
  std::vector<Instance> expand(const Instance& inst);

  // Depth-first search; returns the YES witness (input ids) or nullopt.
  std::optional<std::vector<Edge>> search(Instance inst, int depth = 0);

  const SearchStats& stats() const { return stats_; }
  SearchStats& stats() { return stats_; }
  const SolveOptions& options() const { return options_; }

  std::optional<std::vector<VertexId>> find_path_for_b1(const Graph& g) const;

 private:
  void stage_one(Instance inst, const InducedP3& p3, std::string path, std::vector<FirstStageInstance>& out);
  void audit(const Instance& inst, const InducedP3& p3);
  void check_deadline() const;

  SolveOptions options_;
  SearchStats stats_;
};

class SearchTimeout : public std::runtime_error {
 public:
  SearchTimeout() : std::runtime_error("search deadline exceeded") {}
};

enum class SolveStatus { kYes, kNo, kTimeout };

struct DecisionResult {
  SolveStatus status = SolveStatus::kNo;
  std::optional<EdgeSet> witness;
  SearchStats stats;
};

struct MinimumResult {
  SolveStatus status = SolveStatus::kYes;  // kYes or kTimeout
  long long optimum = 0;
  EdgeSet witness;
  SearchStats stats;
};

// Every YES witness is checked with validate_solution before returning; a
// failing witness throws logic_error.
DecisionResult decide(const Graph& g, long long k, const SolveOptions& options = {});
MinimumResult minimize(const Graph& g, const SolveOptions& options = {});

std::optional<EdgeSet> solve_decision(const Graph& g, long long k, Strategy strategy);
OracleResult solve_minimum(const Graph& g, Strategy strategy);

const char* to_string(Strategy s);
Strategy parse_strategy(const std::string& name);
const char* to_string(PathRuleMode m);
const char* to_string(SolveStatus s);

}  // namespace cdel
