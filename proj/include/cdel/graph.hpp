#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cdel {

using VertexId = std::int32_t;

// Raised when an operation is called outside its contract (missing edge,
// non-induced path, ...). Distinct from logic_error, which flags solver bugs.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Unordered pair stored with the smaller endpoint first.
struct Edge {
  VertexId a = 0;
  VertexId b = 0;

  Edge() = default;
  Edge(VertexId x, VertexId y);

  bool has(VertexId x) const { return a == x || b == x; }
  VertexId other(VertexId x) const { return x == a ? b : a; }

  auto operator<=>(const Edge&) const = default;
};

using EdgeSet = std::set<Edge>;

// Simple undirected graph on vertices [0, n) backed by bit rows. Rows are
// copied wholesale when the search clones an instance, so n is expected to
// stay in the low hundreds.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);
  static Graph from_edges(int n, std::span<const Edge> edges);

  int vertex_count() const { return n_; }
  std::size_t edge_count() const { return m_; }

  bool has_edge(VertexId x, VertexId y) const;
  bool has_edge(const Edge& e) const { return has_edge(e.a, e.b); }
  int degree(VertexId x) const;

  // Sorted ascending.
  std::vector<VertexId> neighbors(VertexId x) const;
  std::vector<Edge> edges() const;

  // Builder-style mutation; solver code goes through delete_edges instead.
  void add_edge(VertexId x, VertexId y);
  void remove_edge(VertexId x, VertexId y);

  bool operator==(const Graph& other) const = default;

 private:
  void check_vertex(VertexId x) const;
  std::uint64_t* row(VertexId x) { return bits_.data() + static_cast<std::size_t>(x) * words_; }
  const std::uint64_t* row(VertexId x) const {
    return bits_.data() + static_cast<std::size_t>(x) * words_;
  }

  int n_ = 0;
  int words_ = 0;
  std::size_t m_ = 0;
  std::vector<std::uint64_t> bits_;
};

struct InducedP3 {
  VertexId u = 0;
  VertexId v = 0;  // center
  VertexId w = 0;
  auto operator<=>(const InducedP3&) const = default;
};

// G - F. Throws PreconditionError if some edge of f is not in g.
Graph delete_edges(const Graph& g, const EdgeSet& f);
Graph delete_edges(const Graph& g, std::span<const Edge> f);

bool is_cluster_graph(const Graph& g);

// Edges e' such that V(e) and V(e') induce a P3.
EdgeSet f_set(const Graph& g, const Edge& e);
std::size_t f_set_size(const Graph& g, const Edge& e);

// Least edge (in Edge order) with |F_e| >= threshold.
std::optional<Edge> find_edge_with_large_f(const Graph& g, std::size_t threshold);

// Least induced P3 in the order (v, u, w) with u < w.
std::optional<InducedP3> find_induced_p3(const Graph& g);
bool is_induced_p3(const Graph& g, const InducedP3& p);

// Least induced 4-cycle (v1, v2, v3, v4) in lexicographic order.
std::optional<std::vector<VertexId>> find_induced_c4(const Graph& g);
bool is_induced_cycle(const Graph& g, std::span<const VertexId> cycle);

// First induced path on exactly min_len vertices in lexicographic DFS order.
std::optional<std::vector<VertexId>> find_induced_long_path(const Graph& g, int min_len = 7);

// Same search, but every interior vertex of the path must have degree 2 in g.
std::optional<std::vector<VertexId>> find_isolated_interior_path(const Graph& g, int min_len = 7);

bool is_induced_path(const Graph& g, std::span<const VertexId> path);

// Blocks ordered by least vertex, vertices sorted within each block.
std::vector<std::vector<VertexId>> connected_components(const Graph& g);

// Component containing x.
std::vector<VertexId> component_of(const Graph& g, VertexId x);

bool is_clique(const Graph& g, std::span<const VertexId> vertices);

bool validate_solution(const Graph& g, const EdgeSet& s, long long k);

// Subgraph induced by `vertices` (sorted, distinct), renumbered 0..|vertices|-1
// in the given order.
Graph induced_subgraph(const Graph& g, std::span<const VertexId> vertices);

std::string to_string(const Edge& e);

}  // namespace cdel
