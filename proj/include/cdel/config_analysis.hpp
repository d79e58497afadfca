#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cdel/branching_math.hpp"
#include "cdel/graph.hpp"

namespace cdel {

// Template for G[A u B u B_1 u B_2] around an induced P3. Core vertices are
// 0 = u', 1 = v', 2 = w', then the B vertices, then the B_1 vertices. B_2
// vertices are degree-1 stubs, stored as a count per B_1 vertex.
struct ConfigurationGraph {
  int b_count = 0;
  int b1_count = 0;
  std::vector<std::uint32_t> adj;   // core adjacency masks
  std::vector<int> stubs;           // per core vertex; non-zero only on B_1

  static ConfigurationGraph bare_p3();

  int core_size() const { return 3 + b_count + b1_count; }
  bool is_b(int x) const { return x >= 3 && x < 3 + b_count; }
  bool is_b1(int x) const { return x >= 3 + b_count && x < core_size(); }
  bool has_edge(int x, int y) const { return (adj[x] >> y) & 1u; }
  int stub_total() const;

  // Core plus one vertex per stub (stubs numbered after the core, in order
  // of their B_1 vertex).
  Graph materialize() const;

  // Equal for configurations related by an isomorphism that fixes A (or
  // swaps u' and w'), maps B to B and B_1 to B_1, and keeps stub counts.
  std::string canonical() const;

  // "B=[..] B1=[..] edges=[..]" over core ids; stubs as x*count.
  std::string describe() const;
};

struct EnumerationLimits {
  int max_b = 4;       // |B| <= |B_u| + |B_w| <= 4
  int max_b1 = 8;      // |B_1| <= 2|B|
  int max_stubs = 2;   // B_2 neighbors per B_1 vertex
  int max_side = 2;    // |B_u|, |B_w|
  int max_f = 3;       // |F_e| for edges touching A u B
};

// Invariant check for one configuration (independent of how it was built).
// Returns an empty string when valid, else a description of the violation.
std::string validate_configuration(const ConfigurationGraph& j, const EnumerationLimits& limits = {});

// All configurations with |B| = b and |B_1| = m, one per isomorphism class,
// in canonical order. Strata are built from the (b, m - 1) stratum (or
// (b - 1, 0) for m = 0) by adding one vertex, which is complete because
// removing any B_1 vertex (or any B vertex when B_1 is empty) keeps a
// configuration valid.
class ConfigurationEnumerator {
 public:
  explicit ConfigurationEnumerator(EnumerationLimits limits = {});

  // Strata in order (0,0), (1,0), (1,1), ..., (b, max_b1), (b+1, 0), ...
  // The callback returns false to stop early.
  void run(const std::function<bool(int b, int m, const std::vector<ConfigurationGraph>&)>& visit) const;

  static std::vector<ConfigurationGraph> extend_b(const std::vector<ConfigurationGraph>& level,
                                                  const EnumerationLimits& limits);
  static std::vector<ConfigurationGraph> extend_b1(const std::vector<ConfigurationGraph>& level,
                                                   const EnumerationLimits& limits);

 private:
  EnumerationLimits limits_;
};

std::vector<ConfigurationGraph> enumerate_configurations(const EnumerationLimits& limits = {});

struct ClosureLeaf {
  Graph graph;
  int cost = 0;
  std::string branch_path;  // '1' = deleted {e}, '2' = deleted F_e
};

// Splits on the least E_0 edge with |F_e| >= 3 (delete {e} or delete F_e)
// until no such edge remains. p3 is (0, 1, 2).
std::vector<ClosureLeaf> first_stage_closure(const Graph& g);
std::vector<ClosureLeaf> first_stage_closure(const ConfigurationGraph& j);

// Maximum number of edge-disjoint induced P3s of g that use only A-A and
// A-`b_vertices` edges, A = {0, 1, 2}; at least 1.
int s_lower_bound(const Graph& g, const std::vector<VertexId>& b_vertices);

struct ConfigurationVerdict {
  BranchingVector vector;
  double branching_number = 1.0;
  std::size_t leaves = 0;
};

ConfigurationVerdict analyze_configuration(const ConfigurationGraph& j);

struct StratumCoverage {
  int b = 0;
  int b1 = 0;
  long long configs = 0;
  long long analyzed = 0;
  bool complete = false;
  double max_branching_number = 1.0;
};

struct Violation {
  std::string config;
  std::string vector;
  double branching_number = 0;
};

struct AnalysisOptions {
  double threshold = 1.393;
  EnumerationLimits limits;
  int threads = 0;                       // 0: hardware concurrency
  std::optional<double> time_cap_seconds;
};

struct ConfigurationReport {
  long long configs_checked = 0;
  double max_branching_number = 1.0;
  std::string argmax_config;       // canonical certificate
  std::string argmax_description;
  std::string argmax_vector;
  std::vector<Violation> violations;
  std::vector<StratumCoverage> coverage;
  bool complete = false;
  double threshold = 1.393;
  double elapsed_seconds = 0;

  std::vector<std::string> uncovered_strata() const;
  std::string to_json(int indent = 2) const;
};

ConfigurationReport analyze_all(const AnalysisOptions& options = {});

}  // namespace cdel
