#include "cdel/almost_clique.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>

namespace cdel {

namespace {

bool cover_complement(const Graph& g, std::vector<char>& removed, int budget, std::vector<VertexId>& xs) {
  const int n = g.vertex_count();
  for (VertexId x = 0; x < n; ++x) {
    if (removed[x]) continue;
    for (VertexId y = x + 1; y < n; ++y) {
      if (removed[y] || g.has_edge(x, y)) continue;
      if (budget == 0) return false;
      for (VertexId z : {x, y}) {
        removed[z] = 1;
        xs.push_back(z);
        if (cover_complement(g, removed, budget - 1, xs)) return true;
        xs.pop_back();
        removed[z] = 0;
      }
      return false;
    }
  }
  return true;
}

EdgeSet cut_edges(const Graph& g, const std::vector<int>& cluster) {
  EdgeSet s;
  for (const Edge& e : g.edges())
    if (cluster[e.a] != cluster[e.b]) s.insert(e);
  return s;
}

class SubsetDp {
 public:
  explicit SubsetDp(const Graph& g) : n_(g.vertex_count()), adj_(n_, 0) {
    for (const Edge& e : g.edges()) {
      adj_[e.a] |= std::uint32_t{1} << e.b;
      adj_[e.b] |= std::uint32_t{1} << e.a;
    }
    memo_.assign(std::size_t{1} << n_, -1);
    choice_.assign(std::size_t{1} << n_, 0);
  }

  std::vector<int> clusters() {
    const std::uint32_t full = n_ == 0 ? 0 : static_cast<std::uint32_t>((std::uint64_t{1} << n_) - 1);
    solve(full);
    std::vector<int> cluster(n_, -1);
    int id = 0;
    for (std::uint32_t rest = full; rest; rest &= ~choice_[rest], ++id)
      for (std::uint32_t c = choice_[rest]; c; c &= c - 1) cluster[std::countr_zero(c)] = id;
    return cluster;
  }

 private:
  int solve(std::uint32_t set) {
    if (set == 0) return 0;
    if (memo_[set] >= 0) return memo_[set];
    const int low = std::countr_zero(set);
    const std::uint32_t bit = std::uint32_t{1} << low;
    int best = -1;
    std::uint32_t best_clique = 0;
    std::function<void(std::uint32_t, int, std::uint32_t)> grow = [&](std::uint32_t clique, int size,
                                                                      std::uint32_t cand) {
      const int value = size * (size - 1) / 2 + solve(set & ~clique);
      if (value > best) {
        best = value;
        best_clique = clique;
      }
      while (cand) {
        const std::uint32_t x = cand & (~cand + 1);
        cand ^= x;
        grow(clique | x, size + 1, cand & adj_[std::countr_zero(x)]);
      }
    };
    grow(bit, 1, set & adj_[low] & ~bit);
    memo_[set] = static_cast<std::int16_t>(best);
    choice_[set] = best_clique;
    return best;
  }

  int n_;
  std::vector<std::uint32_t> adj_;
  std::vector<std::int16_t> memo_;
  std::vector<std::uint32_t> choice_;
};

// Clusters either contain X vertices (an X-group that is a clique of g plus
// Q vertices adjacent to the whole group) or form the single all-Q cluster;
// two all-Q clusters can always be merged because Q is complete.
class PartitionSolver {
 public:
  PartitionSolver(const Graph& g, const AlmostCliqueDecomposition& d) : g_(g), xs_(d.x_set), qs_(d.q_set) {}

  std::vector<int> clusters() {
    assign_x(0);
    std::vector<int> cluster(g_.vertex_count(), -1);
    for (std::size_t t = 0; t < best_clusters_.size(); ++t)
      for (VertexId x : best_clusters_[t]) cluster[x] = static_cast<int>(t);
    return cluster;
  }

 private:
  static long long pairs(long long s) { return s * (s - 1) / 2; }

  void assign_x(std::size_t i) {
    if (i == xs_.size()) {
      evaluate();
      return;
    }
    const VertexId x = xs_[i];
    // index access: the recursion appends to groups_
    for (std::size_t t = 0; t < groups_.size(); ++t) {
      if (!std::all_of(groups_[t].begin(), groups_[t].end(), [&](VertexId y) { return g_.has_edge(x, y); })) continue;
      groups_[t].push_back(x);
      assign_x(i + 1);
      groups_[t].pop_back();
    }
    groups_.push_back({x});
    assign_x(i + 1);
    groups_.pop_back();
  }

  void evaluate() {
    long long base = 0;
    for (const auto& group : groups_) base += pairs(static_cast<long long>(group.size()));

    active_.clear();
    compat_.clear();
    for (std::size_t t = 0; t < groups_.size(); ++t) {
      std::vector<int> ok;
      for (std::size_t q = 0; q < qs_.size(); ++q)
        if (std::all_of(groups_[t].begin(), groups_[t].end(), [&](VertexId y) { return g_.has_edge(qs_[q], y); }))
          ok.push_back(static_cast<int>(q));
      if (!ok.empty()) {
        active_.push_back(static_cast<int>(t));
        compat_.push_back(std::move(ok));
      }
    }
    sizes_.assign(active_.size(), 0);
    max_group_after_.assign(active_.size() + 1, 0);
    for (std::size_t k = active_.size(); k-- > 0;)
      max_group_after_[k] =
          std::max<long long>(max_group_after_[k + 1], static_cast<long long>(groups_[active_[k]].size()));
    choose_sizes(0, static_cast<long long>(qs_.size()), base);
  }

  void choose_sizes(std::size_t k, long long remaining, long long value) {
    if (value + remaining * max_group_after_[k] + pairs(remaining) <= best_value_) return;
    if (k == active_.size()) {
      record(value + pairs(remaining));
      return;
    }
    const long long group_size = static_cast<long long>(groups_[active_[k]].size());
    const long long cap = std::min<long long>(remaining, static_cast<long long>(compat_[k].size()));
    for (long long s = cap; s >= 0; --s) {
      sizes_[k] = static_cast<int>(s);
      if (s > 0 && !feasible(k + 1)) continue;
      choose_sizes(k + 1, remaining - s, value + s * group_size + pairs(s));
    }
    sizes_[k] = 0;
  }

  // Kuhn matching of group slots (sizes_[0..upto)) to distinct Q vertices.
  bool feasible(std::size_t upto) {
    owner_.assign(qs_.size(), -1);
    slot_group_.clear();
    for (std::size_t k = 0; k < upto; ++k)
      for (int s = 0; s < sizes_[k]; ++s) slot_group_.push_back(static_cast<int>(k));
    for (std::size_t slot = 0; slot < slot_group_.size(); ++slot) {
      seen_.assign(qs_.size(), 0);
      if (!augment(static_cast<int>(slot))) return false;
    }
    return true;
  }

  bool augment(int slot) {
    for (int q : compat_[slot_group_[slot]]) {
      if (seen_[q]) continue;
      seen_[q] = 1;
      if (owner_[q] < 0 || augment(owner_[q])) {
        owner_[q] = slot;
        return true;
      }
    }
    return false;
  }

  void record(long long value) {
    if (value <= best_value_) return;
    feasible(active_.size());
    best_value_ = value;
    best_clusters_ = groups_;
    std::vector<char> used(qs_.size(), 0);
    for (std::size_t q = 0; q < qs_.size(); ++q)
      if (owner_[q] >= 0) {
        best_clusters_[active_[slot_group_[owner_[q]]]].push_back(qs_[q]);
        used[q] = 1;
      }
    std::vector<VertexId> rest;
    for (std::size_t q = 0; q < qs_.size(); ++q)
      if (!used[q]) rest.push_back(qs_[q]);
    if (!rest.empty()) best_clusters_.push_back(std::move(rest));
  }

  const Graph& g_;
  std::vector<VertexId> xs_;
  std::vector<VertexId> qs_;
  std::vector<std::vector<VertexId>> groups_;

  std::vector<int> active_;
  std::vector<std::vector<int>> compat_;
  std::vector<int> sizes_;
  std::vector<long long> max_group_after_;
  std::vector<int> owner_;
  std::vector<int> slot_group_;
  std::vector<char> seen_;

  long long best_value_ = -1;
  std::vector<std::vector<VertexId>> best_clusters_;
};

}  // namespace

std::optional<AlmostCliqueDecomposition> decompose(const Graph& g, int alpha) {
  if (alpha < 0) throw PreconditionError("decompose: alpha must be non-negative");
  if (g.vertex_count() > 0 && component_of(g, 0).size() != static_cast<std::size_t>(g.vertex_count()))
    throw PreconditionError("decompose: graph is not connected");
  for (int budget = 0; budget <= alpha; ++budget) {
    std::vector<char> removed(g.vertex_count(), 0);
    std::vector<VertexId> xs;
    if (!cover_complement(g, removed, budget, xs)) continue;
    AlmostCliqueDecomposition d;
    std::sort(xs.begin(), xs.end());
    d.x_set = xs;
    for (VertexId v = 0; v < g.vertex_count(); ++v)
      if (!removed[v]) d.q_set.push_back(v);
    return d;
  }
  return std::nullopt;
}

void check_decomposition(const Graph& g, const AlmostCliqueDecomposition& d) {
  std::vector<int> seen(g.vertex_count(), 0);
  for (const auto* part : {&d.x_set, &d.q_set})
    for (VertexId x : *part) {
      if (x < 0 || x >= g.vertex_count()) throw PreconditionError("decomposition names vertex " + std::to_string(x) + " outside the graph");
      if (seen[x]++) throw PreconditionError("decomposition lists vertex " + std::to_string(x) + " twice");
    }
  if (d.x_set.size() + d.q_set.size() != static_cast<std::size_t>(g.vertex_count()))
    throw PreconditionError("decomposition does not cover every vertex");
  if (!is_clique(g, d.q_set)) throw PreconditionError("decomposition: q_set is not a clique");
}

EdgeSet solve_component(const Graph& g, const AlmostCliqueDecomposition& d, AlmostCliqueEngine engine) {
  check_decomposition(g, d);
  if (engine == AlmostCliqueEngine::kAuto)
    engine = g.vertex_count() <= kAutoSubsetDpVertices ? AlmostCliqueEngine::kSubsetDp : AlmostCliqueEngine::kPartition;
  if (engine == AlmostCliqueEngine::kSubsetDp) {
    if (g.vertex_count() > kSubsetDpMaxVertices)
      throw PreconditionError("subset DP engine handles at most " + std::to_string(kSubsetDpMaxVertices) + " vertices");
    return cut_edges(g, SubsetDp(g).clusters());
  }
  return cut_edges(g, PartitionSolver(g, d).clusters());
}

}  // namespace cdel
