#include "cdel/canonical.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <stdexcept>

namespace cdel {

namespace {

// Refines until stable; new colors are ranks of (old color, sorted neighbor
// colors), so they only depend on the isomorphism class.
void refine(const ColoredGraph& g, std::vector<int>& color) {
  const int n = g.n;
  int classes = static_cast<int>(std::set<int>(color.begin(), color.end()).size());
  std::vector<std::pair<std::vector<int>, int>> sig(n);
  for (;;) {
    for (int x = 0; x < n; ++x) {
      auto& s = sig[x].first;
      s.assign(1, color[x]);
      for (std::uint32_t m = g.adj[x]; m; m &= m - 1) s.push_back(color[std::countr_zero(m)]);
      std::sort(s.begin() + 1, s.end());
      sig[x].second = x;
    }
    std::vector<int> order(n);
    for (int x = 0; x < n; ++x) order[x] = x;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return sig[a].first < sig[b].first; });
    int next = 0;
    for (int i = 0; i < n; ++i) {
      if (i > 0 && sig[order[i]].first != sig[order[i - 1]].first) ++next;
      color[order[i]] = next;
    }
    const int now = n == 0 ? 0 : next + 1;
    if (now == classes) return;
    classes = now;
  }
}

class Search {
 public:
  explicit Search(const ColoredGraph& g) : g_(g) {}

  std::string run() {
    std::vector<int> color = g_.color;
    visit(color);
    return best_;
  }

 private:
  std::string certificate(const std::vector<int>& color) const {
    std::vector<int> order(g_.n);
    for (int x = 0; x < g_.n; ++x) order[color[x]] = x;
    std::string out;
    out.reserve(g_.n * (g_.n + 4));
    for (int x : order) {
      out += std::to_string(g_.color[x]);
      out += ',';
    }
    out += '|';
    for (int i = 0; i < g_.n; ++i)
      for (int k = i + 1; k < g_.n; ++k) out += (g_.adj[order[i]] >> order[k] & 1u) ? '1' : '0';
    return out;
  }

  void visit(std::vector<int>& color) {
    refine(g_, color);
    std::map<int, std::vector<int>> cells;
    for (int x = 0; x < g_.n; ++x) cells[color[x]].push_back(x);
    const std::vector<int>* target = nullptr;
    for (const auto& [c, members] : cells)
      if (members.size() > 1) {
        target = &members;
        break;
      }
    if (!target) {
      std::string cert = certificate(color);
      if (!found_ || cert < best_) best_ = std::move(cert);
      found_ = true;
      return;
    }
    std::vector<int> tried;
    for (int x : *target) {
      const bool twin = std::any_of(tried.begin(), tried.end(), [&](int y) {
        const std::uint32_t bx = 1u << x, by = 1u << y;
        return (g_.adj[x] & ~by) == (g_.adj[y] & ~bx);
      });
      if (twin) continue;
      tried.push_back(x);
      std::vector<int> next(color.size());
      for (int z = 0; z < g_.n; ++z) next[z] = 2 * color[z] + (color[z] == color[x] && z != x ? 1 : 0);
      visit(next);
    }
  }

  const ColoredGraph& g_;
  std::string best_;
  bool found_ = false;
};

}  // namespace

std::string canonical_certificate(const ColoredGraph& g) {
  if (g.n > 32) throw std::invalid_argument("canonical_certificate: at most 32 vertices");
  if (static_cast<int>(g.adj.size()) != g.n || static_cast<int>(g.color.size()) != g.n)
    throw std::invalid_argument("canonical_certificate: size mismatch");
  return Search(g).run();
}

}  // namespace cdel
