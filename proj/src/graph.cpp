#include "cdel/graph.hpp"

#include <algorithm>
#include <bit>
#include <queue>

namespace cdel {

Edge::Edge(VertexId x, VertexId y) : a(std::min(x, y)), b(std::max(x, y)) {
  if (x == y) throw PreconditionError("self-loop edge (" + std::to_string(x) + "," + std::to_string(y) + ")");
}

std::string to_string(const Edge& e) {
  return "(" + std::to_string(e.a) + "," + std::to_string(e.b) + ")";
}

Graph::Graph(int n) : n_(n), words_((n + 63) / 64) {
  if (n < 0) throw PreconditionError("negative vertex count");
  bits_.assign(static_cast<std::size_t>(n_) * words_, 0);
}

Graph Graph::from_edges(int n, std::span<const Edge> edges) {
  Graph g(n);
  for (const Edge& e : edges) g.add_edge(e.a, e.b);
  return g;
}

void Graph::check_vertex(VertexId x) const {
  if (x < 0 || x >= n_) throw PreconditionError("vertex " + std::to_string(x) + " out of range");
}

bool Graph::has_edge(VertexId x, VertexId y) const {
  if (x < 0 || y < 0 || x >= n_ || y >= n_) return false;
  return (row(x)[y >> 6] >> (y & 63)) & 1u;
}

int Graph::degree(VertexId x) const {
  check_vertex(x);
  int d = 0;
  const auto* r = row(x);
  for (int i = 0; i < words_; ++i) d += std::popcount(r[i]);
  return d;
}

std::vector<VertexId> Graph::neighbors(VertexId x) const {
  check_vertex(x);
  std::vector<VertexId> out;
  const auto* r = row(x);
  for (int i = 0; i < words_; ++i) {
    std::uint64_t word = r[i];
    while (word) {
      out.push_back(i * 64 + std::countr_zero(word));
      word &= word - 1;
    }
  }
  return out;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(m_);
  for (VertexId x = 0; x < n_; ++x)
    for (VertexId y : neighbors(x))
      if (x < y) out.emplace_back(x, y);
  return out;
}

void Graph::add_edge(VertexId x, VertexId y) {
  check_vertex(x);
  check_vertex(y);
  if (x == y) throw PreconditionError("self-loop on vertex " + std::to_string(x));
  if (has_edge(x, y)) return;
  row(x)[y >> 6] |= std::uint64_t{1} << (y & 63);
  row(y)[x >> 6] |= std::uint64_t{1} << (x & 63);
  ++m_;
}

void Graph::remove_edge(VertexId x, VertexId y) {
  if (!has_edge(x, y)) throw PreconditionError("edge (" + std::to_string(x) + "," + std::to_string(y) + ") not in graph");
  row(x)[y >> 6] &= ~(std::uint64_t{1} << (y & 63));
  row(y)[x >> 6] &= ~(std::uint64_t{1} << (x & 63));
  --m_;
}

Graph delete_edges(const Graph& g, std::span<const Edge> f) {
  Graph out = g;
  for (const Edge& e : f) {
    if (!out.has_edge(e)) throw PreconditionError("cannot delete " + to_string(e) + ": not an edge");
    out.remove_edge(e.a, e.b);
  }
  return out;
}

Graph delete_edges(const Graph& g, const EdgeSet& f) {
  std::vector<Edge> list(f.begin(), f.end());
  return delete_edges(g, std::span<const Edge>(list));
}

bool is_clique(const Graph& g, std::span<const VertexId> vertices) {
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (std::size_t j = i + 1; j < vertices.size(); ++j)
      if (!g.has_edge(vertices[i], vertices[j])) return false;
  return true;
}

bool is_cluster_graph(const Graph& g) {
  for (const auto& block : connected_components(g)) {
    const std::size_t need = block.size() - 1;
    for (VertexId x : block)
      if (static_cast<std::size_t>(g.degree(x)) != need) return false;
  }
  return true;
}

EdgeSet f_set(const Graph& g, const Edge& e) {
  if (!g.has_edge(e)) throw PreconditionError("f_set: " + to_string(e) + " is not an edge");
  EdgeSet out;
  for (VertexId z : g.neighbors(e.a))
    if (z != e.b && !g.has_edge(z, e.b)) out.emplace(e.a, z);
  for (VertexId z : g.neighbors(e.b))
    if (z != e.a && !g.has_edge(z, e.a)) out.emplace(e.b, z);
  return out;
}

std::size_t f_set_size(const Graph& g, const Edge& e) {
  std::size_t count = 0;
  for (VertexId z : g.neighbors(e.a))
    if (z != e.b && !g.has_edge(z, e.b)) ++count;
  for (VertexId z : g.neighbors(e.b))
    if (z != e.a && !g.has_edge(z, e.a)) ++count;
  return count;
}

std::optional<Edge> find_edge_with_large_f(const Graph& g, std::size_t threshold) {
  for (VertexId x = 0; x < g.vertex_count(); ++x)
    for (VertexId y : g.neighbors(x))
      if (x < y && f_set_size(g, Edge(x, y)) >= threshold) return Edge(x, y);
  return std::nullopt;
}

bool is_induced_p3(const Graph& g, const InducedP3& p) {
  if (p.u == p.v || p.v == p.w || p.u == p.w) return false;
  return g.has_edge(p.u, p.v) && g.has_edge(p.v, p.w) && !g.has_edge(p.u, p.w);
}

std::optional<InducedP3> find_induced_p3(const Graph& g) {
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    const auto nb = g.neighbors(v);
    for (std::size_t i = 0; i < nb.size(); ++i)
      for (std::size_t j = i + 1; j < nb.size(); ++j)
        if (!g.has_edge(nb[i], nb[j])) return InducedP3{nb[i], v, nb[j]};
  }
  return std::nullopt;
}

bool is_induced_cycle(const Graph& g, std::span<const VertexId> cycle) {
  const std::size_t len = cycle.size();
  if (len < 4) return false;
  for (std::size_t i = 0; i < len; ++i)
    for (std::size_t j = i + 1; j < len; ++j) {
      if (cycle[i] == cycle[j]) return false;
      const bool consecutive = j == i + 1 || (i == 0 && j == len - 1);
      if (g.has_edge(cycle[i], cycle[j]) != consecutive) return false;
    }
  return true;
}

std::optional<std::vector<VertexId>> find_induced_c4(const Graph& g) {
  const int n = g.vertex_count();
  for (VertexId v1 = 0; v1 < n; ++v1) {
    const auto n1 = g.neighbors(v1);
    for (VertexId v2 : n1) {
      if (v2 < v1) continue;
      for (VertexId v3 : g.neighbors(v2)) {
        if (v3 <= v1 || g.has_edge(v1, v3)) continue;
        for (VertexId v4 : n1) {
          if (v4 <= v2 || !g.has_edge(v3, v4) || g.has_edge(v2, v4)) continue;
          return std::vector<VertexId>{v1, v2, v3, v4};
        }
      }
    }
  }
  return std::nullopt;
}

bool is_induced_path(const Graph& g, std::span<const VertexId> path) {
  for (std::size_t i = 0; i < path.size(); ++i)
    for (std::size_t j = i + 1; j < path.size(); ++j) {
      if (path[i] == path[j]) return false;
      if (g.has_edge(path[i], path[j]) != (j == i + 1)) return false;
    }
  return true;
}

namespace {

bool extend_path(const Graph& g, std::vector<VertexId>& path, std::vector<char>& on_path, int target,
                 bool isolated_interior) {
  if (static_cast<int>(path.size()) == target) return true;
  const VertexId last = path.back();
  const int position = static_cast<int>(path.size());
  for (VertexId next : g.neighbors(last)) {
    if (on_path[next]) continue;
    bool induced = true;
    for (std::size_t i = 0; i + 1 < path.size() && induced; ++i)
      if (g.has_edge(path[i], next)) induced = false;
    if (!induced) continue;
    if (isolated_interior && position < target - 1 && g.degree(next) != 2) continue;
    path.push_back(next);
    on_path[next] = 1;
    if (extend_path(g, path, on_path, target, isolated_interior)) return true;
    on_path[next] = 0;
    path.pop_back();
  }
  return false;
}

std::optional<std::vector<VertexId>> search_path(const Graph& g, int min_len, bool isolated_interior) {
  if (min_len < 2) throw PreconditionError("induced path search needs min_len >= 2");
  std::vector<char> on_path(g.vertex_count(), 0);
  std::vector<VertexId> path;
  for (VertexId start = 0; start < g.vertex_count(); ++start) {
    if (g.degree(start) == 0) continue;
    path.assign(1, start);
    on_path[start] = 1;
    if (extend_path(g, path, on_path, min_len, isolated_interior)) return path;
    on_path[start] = 0;
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::vector<VertexId>> find_induced_long_path(const Graph& g, int min_len) {
  return search_path(g, min_len, false);
}

std::optional<std::vector<VertexId>> find_isolated_interior_path(const Graph& g, int min_len) {
  return search_path(g, min_len, true);
}

std::vector<VertexId> component_of(const Graph& g, VertexId x) {
  std::vector<char> seen(g.vertex_count(), 0);
  std::vector<VertexId> out{x};
  seen[x] = 1;
  for (std::size_t head = 0; head < out.size(); ++head)
    for (VertexId y : g.neighbors(out[head]))
      if (!seen[y]) {
        seen[y] = 1;
        out.push_back(y);
      }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<VertexId>> connected_components(const Graph& g) {
  std::vector<char> seen(g.vertex_count(), 0);
  std::vector<std::vector<VertexId>> blocks;
  for (VertexId x = 0; x < g.vertex_count(); ++x) {
    if (seen[x]) continue;
    auto block = component_of(g, x);
    for (VertexId y : block) seen[y] = 1;
    blocks.push_back(std::move(block));
  }
  return blocks;
}

bool validate_solution(const Graph& g, const EdgeSet& s, long long k) {
  if (static_cast<long long>(s.size()) > k) return false;
  for (const Edge& e : s)
    if (!g.has_edge(e)) return false;
  return is_cluster_graph(delete_edges(g, s));
}

Graph induced_subgraph(const Graph& g, std::span<const VertexId> vertices) {
  Graph out(static_cast<int>(vertices.size()));
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (std::size_t j = i + 1; j < vertices.size(); ++j)
      if (g.has_edge(vertices[i], vertices[j])) out.add_edge(static_cast<VertexId>(i), static_cast<VertexId>(j));
  return out;
}

}  // namespace cdel
