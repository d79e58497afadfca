#include "cdel/p3_structure.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace cdel {

namespace {

std::string join(const std::vector<VertexId>& xs) {
  std::ostringstream out;
  out << '{';
  for (std::size_t i = 0; i < xs.size(); ++i) out << (i ? "," : "") << xs[i];
  out << '}';
  return out.str();
}

}  // namespace

std::size_t P3Context::frontier_size(int i) const {
  if (i < 0 || i >= static_cast<int>(frontiers.size())) return 0;
  return frontiers[i].size();
}

std::vector<VertexId> P3Context::next_neighbors(const Graph& g, VertexId x) const {
  std::vector<VertexId> out;
  const int i = level[x];
  if (i < 0) return out;
  for (VertexId y : g.neighbors(x))
    if (level[y] == i + 1) out.push_back(y);
  return out;
}

std::vector<VertexId> P3Context::same_neighbors(const Graph& g, VertexId x) const {
  std::vector<VertexId> out;
  const int i = level[x];
  if (i < 0) return out;
  for (VertexId y : g.neighbors(x))
    if (level[y] == i) out.push_back(y);
  return out;
}

std::vector<VertexId> P3Context::prev_neighbors(const Graph& g, VertexId x) const {
  std::vector<VertexId> out;
  const int i = level[x];
  if (i < 0) return out;
  for (VertexId y : g.neighbors(x))
    if (level[y] == i - 1) out.push_back(y);
  return out;
}

std::vector<VertexId> P3Context::deep_vertices() const {
  std::vector<VertexId> out;
  for (std::size_t i = 2; i < layers.size(); ++i) out.insert(out.end(), layers[i].begin(), layers[i].end());
  std::sort(out.begin(), out.end());
  return out;
}

P3Context build_context(const Graph& g, const InducedP3& p3, const EdgeSet& marks) {
  if (!is_induced_p3(g, p3)) throw PreconditionError("build_context: (u,v,w) is not an induced P3 with center v");
  for (const Edge& e : marks)
    if (!g.has_edge(e)) throw PreconditionError("build_context: marked edge " + to_string(e) + " is not in the graph");

  const int n = g.vertex_count();
  P3Context ctx;
  ctx.p3 = p3;
  ctx.marks = marks;
  ctx.region.assign(n, Region::kOutside);
  ctx.level.assign(n, kNoLevel);
  ctx.a = {p3.u, p3.v, p3.w};
  std::sort(ctx.a.begin(), ctx.a.end());
  for (VertexId x : ctx.a) {
    ctx.region[x] = Region::kA;
    ctx.level[x] = -1;
  }

  std::vector<VertexId> layer0;
  for (VertexId x = 0; x < n; ++x) {
    if (ctx.region[x] == Region::kA) continue;
    const bool nu = g.has_edge(x, p3.u), nv = g.has_edge(x, p3.v), nw = g.has_edge(x, p3.w);
    const int count = nu + nv + nw;
    if (count == 3) {
      ctx.c.push_back(x);
      ctx.region[x] = Region::kC;
    } else if (count >= 1) {
      ctx.b.push_back(x);
      layer0.push_back(x);
      ctx.region[x] = Region::kLayer;
      ctx.level[x] = 0;
      if (nu != nv) ctx.b_u.push_back(x);
      if (nw != nv) ctx.b_w.push_back(x);
    }
  }
  for (VertexId x = 0; x < n; ++x) {
    if (ctx.region[x] != Region::kOutside) continue;
    for (VertexId y : g.neighbors(x))
      if (ctx.region[y] == Region::kC) {
        ctx.d.push_back(x);
        ctx.region[x] = Region::kD;
        break;
      }
  }

  ctx.layers.push_back(std::move(layer0));
  for (int i = 0;; ++i) {
    std::vector<VertexId> next;
    for (VertexId x : ctx.layers[i])
      for (VertexId y : g.neighbors(x))
        if (ctx.region[y] == Region::kOutside) {
          ctx.region[y] = Region::kLayer;
          ctx.level[y] = i + 1;
          next.push_back(y);
        }
    if (next.empty()) break;
    std::sort(next.begin(), next.end());
    ctx.layers.push_back(std::move(next));
  }

  for (std::size_t i = 0; i + 1 < ctx.layers.size(); ++i) {
    std::vector<Edge> frontier;
    for (VertexId x : ctx.layers[i])
      for (VertexId y : g.neighbors(x))
        if (ctx.level[y] == static_cast<int>(i) + 1) {
          Edge e(x, y);
          if (i == 1 && marks.contains(e)) continue;
          frontier.push_back(e);
        }
    std::sort(frontier.begin(), frontier.end());
    ctx.frontiers.push_back(std::move(frontier));
  }

  for (std::size_t i = 0; i < ctx.frontiers.size() && !ctx.j; ++i)
    for (const Edge& e : ctx.frontiers[i])
      if (f_set_size(g, e) >= 3) {
        ctx.j = static_cast<int>(i);
        break;
      }
  return ctx;
}

std::vector<VertexId> component_closure(const P3Context& ctx, const Graph& g) {
  std::vector<VertexId> out = ctx.a;
  out.insert(out.end(), ctx.c.begin(), ctx.c.end());
  out.insert(out.end(), ctx.d.begin(), ctx.d.end());
  for (const auto& layer : ctx.layers) out.insert(out.end(), layer.begin(), layer.end());
  std::sort(out.begin(), out.end());

  if (!find_edge_with_large_f(g, 4) && is_clique(g, ctx.c)) {
    if (out != component_of(g, ctx.p3.v))
      throw std::logic_error("component_closure: closure differs from the component of v");
  }
  return out;
}

AuditPreconditions observe_preconditions(const P3Context& ctx, const Graph& g) {
  AuditPreconditions pre;
  pre.b1_inapplicable = !find_induced_long_path(g, 7);
  pre.b2_inapplicable = !find_edge_with_large_f(g, 4);
  pre.no_induced_c4 = !find_induced_c4(g);
  pre.c_is_clique = is_clique(g, ctx.c);
  return pre;
}

bool LemmaAuditReport::ok() const {
  return std::none_of(verdicts.begin(), verdicts.end(),
                      [](const LemmaVerdict& v) { return v.verdict == Verdict::kFailed; });
}

const LemmaVerdict* LemmaAuditReport::find(const std::string& name) const {
  for (const auto& v : verdicts)
    if (v.name == name) return &v;
  return nullptr;
}

std::string LemmaAuditReport::failures() const {
  std::string out;
  for (const auto& v : verdicts)
    if (v.verdict == Verdict::kFailed) out += v.name + ": " + v.witness + "; ";
  return out;
}

namespace {

class Auditor {
 public:
  Auditor(const P3Context& ctx, const Graph& g) : ctx_(ctx), g_(g) {}

  void skip(const std::string& name) { report_.verdicts.push_back({name, Verdict::kSkipped, {}}); }
  void pass(const std::string& name) { report_.verdicts.push_back({name, Verdict::kPassed, {}}); }
  void fail(const std::string& name, std::string witness) {
    report_.verdicts.push_back({name, Verdict::kFailed, std::move(witness)});
  }
  void record(const std::string& name, const std::string& witness) {
    if (witness.empty()) pass(name);
    else fail(name, witness);
  }

  // Vertices of B_lo..B_hi (hi clipped to the last layer).
  std::vector<VertexId> layer_range(int lo, std::optional<int> hi) const {
    std::vector<VertexId> out;
    const int last = static_cast<int>(ctx_.layers.size()) - 1;
    const int top = hi ? std::min(*hi, last) : last;
    for (int i = std::max(lo, 0); i <= top; ++i)
      out.insert(out.end(), ctx_.layers[i].begin(), ctx_.layers[i].end());
    return out;
  }

  std::string check_b_sides() const {
    if (ctx_.b_u.size() > 2) return "B_u=" + join(ctx_.b_u);
    if (ctx_.b_w.size() > 2) return "B_w=" + join(ctx_.b_w);
    return {};
  }

  std::string check_c_clique() const {
    for (std::size_t i = 0; i < ctx_.c.size(); ++i)
      for (std::size_t k = i + 1; k < ctx_.c.size(); ++k)
        if (!g_.has_edge(ctx_.c[i], ctx_.c[k]))
          return "non-adjacent " + std::to_string(ctx_.c[i]) + "," + std::to_string(ctx_.c[k]);
    return {};
  }

  std::string check_d() const {
    if (ctx_.d.size() > 3) return "D=" + join(ctx_.d);
    for (VertexId x : ctx_.d) {
      for (VertexId y : ctx_.c)
        if (!g_.has_edge(x, y)) return "d=" + std::to_string(x) + " misses c=" + std::to_string(y);
      for (VertexId y : g_.neighbors(x)) {
        const Region r = ctx_.region[y];
        const bool allowed = r == Region::kC || r == Region::kD || (r == Region::kLayer && ctx_.level[y] == 0);
        if (!allowed) return "d=" + std::to_string(x) + " has neighbor " + std::to_string(y) + " outside B,C,D";
      }
    }
    return {};
  }

  std::string check_next_at_most_two() const {
    for (VertexId x : layer_range(0, std::nullopt))
      if (auto nx = ctx_.next_neighbors(g_, x); nx.size() > 2)
        return "x=" + std::to_string(x) + " N_next=" + join(nx);
    const std::size_t b1 = ctx_.layers.size() > 1 ? ctx_.layers[1].size() : 0;
    if (b1 > 2 * ctx_.b.size() || b1 > 8) return "|B_1|=" + std::to_string(b1) + " |B|=" + std::to_string(ctx_.b.size());
    if (ctx_.frontier_size(0) > 8) return "|E_0|=" + std::to_string(ctx_.frontier_size(0));
    return {};
  }

  std::string check_next_at_most_one() const {
    for (VertexId x : layer_range(1, ctx_.j))
      if (auto nx = ctx_.next_neighbors(g_, x); nx.size() > 1)
        return "x=" + std::to_string(x) + " N_next=" + join(nx);
    return {};
  }

  std::string check_same() const {
    for (VertexId x : layer_range(2, ctx_.j)) {
      const auto same = ctx_.same_neighbors(g_, x);
      if (same.size() > 1) return "x=" + std::to_string(x) + " N_same=" + join(same);
      if (same.size() == 1 && !ctx_.next_neighbors(g_, x).empty())
        return "x=" + std::to_string(x) + " has N_same and N_next";
    }
    return {};
  }

  std::string check_prev() const {
    for (VertexId x : layer_range(3, ctx_.j)) {
      const auto prev = ctx_.prev_neighbors(g_, x);
      if (prev.size() > 2) return "x=" + std::to_string(x) + " N_prev=" + join(prev);
      if (prev.size() == 2 && (!ctx_.next_neighbors(g_, x).empty() || !ctx_.same_neighbors(g_, x).empty()))
        return "x=" + std::to_string(x) + " has |N_prev|=2 and further neighbors";
    }
    return {};
  }

  std::string check_prev_b2() const {
    if (ctx_.layers.size() <= 2) return {};
    for (VertexId x : ctx_.layers[2]) {
      const auto next = ctx_.next_neighbors(g_, x);
      if (next.empty()) continue;
      const auto prev = ctx_.prev_neighbors(g_, x);
      if (prev.size() > 2) return "x=" + std::to_string(x) + " N_prev=" + join(prev);
      if (next.size() != 1) return "x=" + std::to_string(x) + " N_next=" + join(next);
      if (auto nb = g_.neighbors(next[0]); nb != std::vector<VertexId>{x})
        return "x'=" + std::to_string(next[0]) + " N(x')=" + join(nb);
    }
    return {};
  }

  std::string check_frontiers() const {
    const int count = static_cast<int>(ctx_.frontiers.size());
    const int top = ctx_.j ? std::min(*ctx_.j, count - 1) : count - 1;
    for (int i = 1; i <= top; ++i)
      if (ctx_.frontiers[i].size() > ctx_.frontiers[i - 1].size())
        return "|E_" + std::to_string(i) + "|=" + std::to_string(ctx_.frontiers[i].size()) + " > |E_" +
               std::to_string(i - 1) + "|=" + std::to_string(ctx_.frontiers[i - 1].size());
    return {};
  }

  std::string check_paths() {
    const auto verts = layer_range(2, ctx_.j);
    std::vector<char> in(g_.vertex_count(), 0);
    for (VertexId x : verts) in[x] = 1;
    std::vector<char> seen(g_.vertex_count(), 0);
    int paths = 0;
    for (VertexId s : verts) {
      if (seen[s]) continue;
      std::vector<VertexId> comp{s};
      seen[s] = 1;
      std::size_t inner_edges = 0;
      for (std::size_t h = 0; h < comp.size(); ++h) {
        int deg = 0;
        for (VertexId y : g_.neighbors(comp[h])) {
          if (!in[y]) continue;
          ++deg;
          if (comp[h] < y) ++inner_edges;
          if (!seen[y]) {
            seen[y] = 1;
            comp.push_back(y);
          }
        }
        if (deg > 2) return "vertex " + std::to_string(comp[h]) + " has degree " + std::to_string(deg) + " in B_2..B_j";
      }
      if (inner_edges + 1 != comp.size()) return "component of " + std::to_string(s) + " is not a path";
      ++paths;
    }
    report_.deep_path_count = paths;
    if (static_cast<std::size_t>(paths) > ctx_.frontier_size(1))
      return std::to_string(paths) + " paths but |E_1|=" + std::to_string(ctx_.frontier_size(1));
    return {};
  }

  LemmaAuditReport take() { return std::move(report_); }

 private:
  const P3Context& ctx_;
  const Graph& g_;
  LemmaAuditReport report_;
};

}  // namespace

LemmaAuditReport lemma_audit(const P3Context& ctx, const Graph& g, const AuditPreconditions& pre) {
  Auditor audit(ctx, g);
  // The layer lemmas are stated for graphs on which rule B4 is applied:
  // B1 and B2 exhausted and C a clique.
  const bool layered = pre.b1_inapplicable && pre.b2_inapplicable && pre.c_is_clique;

  if (pre.b2_inapplicable) audit.record("b_side_sizes", audit.check_b_sides());
  else audit.skip("b_side_sizes");

  if (pre.no_induced_c4) audit.record("c_clique_without_c4", audit.check_c_clique());
  else audit.skip("c_clique_without_c4");

  if (pre.b2_inapplicable && pre.c_is_clique) audit.record("d_bounded", audit.check_d());
  else audit.skip("d_bounded");

  if (pre.b2_inapplicable) audit.record("next_at_most_two", audit.check_next_at_most_two());
  else audit.skip("next_at_most_two");

  if (layered && ctx.j_at_least(1)) audit.record("next_at_most_one", audit.check_next_at_most_one());
  else audit.skip("next_at_most_one");

  if (layered && ctx.j_at_least(2)) audit.record("same_layer", audit.check_same());
  else audit.skip("same_layer");

  if (layered && ctx.j_at_least(3)) audit.record("prev_layer", audit.check_prev());
  else audit.skip("prev_layer");

  if (layered && ctx.j_at_least(2)) audit.record("prev_of_b2", audit.check_prev_b2());
  else audit.skip("prev_of_b2");

  if (layered) audit.record("frontier_sizes", audit.check_frontiers());
  else audit.skip("frontier_sizes");

  if (layered && ctx.j_at_least(2)) audit.record("deep_paths", audit.check_paths());
  else audit.skip("deep_paths");

  return audit.take();
}

const char* to_string(Region r) {
  switch (r) {
    case Region::kA: return "A";
    case Region::kLayer: return "layer";
    case Region::kC: return "C";
    case Region::kD: return "D";
    case Region::kOutside: return "outside";
  }
  return "?";
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::kSkipped: return "skipped";
    case Verdict::kPassed: return "passed";
    case Verdict::kFailed: return "failed";
  }
  return "?";
}

}  // namespace cdel
