#include "copnum/verify/enumerate.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "copnum/error.hpp"

namespace copnum::verify {

namespace {

// Stable color refinement; colors are ranks of sorted signatures, so the
// ordered partition is an isomorphism invariant.
std::vector<std::uint32_t> refine(const Graph& g) {
  const std::size_t n = g.order();
  std::vector<std::uint32_t> color(n);
  for (Vertex v = 0; v < n; ++v) color[v] = static_cast<std::uint32_t>(g.degree(v));
  std::size_t classes = 0;
  for (;;) {
    std::vector<std::vector<std::uint32_t>> sig(n);
    for (Vertex v = 0; v < n; ++v) {
      sig[v].push_back(color[v]);
      std::vector<std::uint32_t> around;
      for (Vertex w : g.neighbors(v)) around.push_back(color[w]);
      std::sort(around.begin(), around.end());
      sig[v].insert(sig[v].end(), around.begin(), around.end());
    }
    std::map<std::vector<std::uint32_t>, std::uint32_t> rank;
    for (const auto& s : sig) rank.emplace(s, 0);
    std::uint32_t r = 0;
    for (auto& [s, id] : rank) id = r++;
    for (Vertex v = 0; v < n; ++v) color[v] = rank[sig[v]];
    if (rank.size() == classes) return color;
    classes = rank.size();
  }
}

}  // namespace

std::uint64_t canonical_code(const Graph& g) {
  const std::size_t n = g.order();
  if (n > 11) throw PreconditionError("canonical_code supports at most 11 vertices");
  const auto color = refine(g);
  // Target positions are assigned cell by cell in color order.
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
    return color[a] != color[b] ? color[a] < color[b] : a < b;
  });
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && color[order[j]] == color[order[i]]) ++j;
    cells.emplace_back(i, j);
    i = j;
  }
  std::vector<std::vector<std::uint8_t>> adj(n, std::vector<std::uint8_t>(n, 0));
  for (const auto& e : g.edges()) adj[e.u][e.v] = adj[e.v][e.u] = 1;

  std::uint64_t best = 0;
  bool first = true;
  // Odometer over the permutations of every cell.
  for (;;) {
    std::uint64_t code = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) code = (code << 1) | adj[order[i]][order[j]];
    }
    if (first || code > best) best = code;
    first = false;
    std::size_t c = 0;
    for (; c < cells.size(); ++c) {
      auto [lo, hi] = cells[c];
      if (std::next_permutation(order.begin() + lo, order.begin() + hi)) break;
    }
    if (c == cells.size()) break;
  }
  return best;
}

std::vector<Graph> connected_graphs(std::size_t n) {
  if (n == 0 || n > 9) throw PreconditionError("connected_graphs supports 1 <= n <= 9");
  std::vector<Graph> level{Graph::from_edges(1, {})};
  for (std::size_t m = 2; m <= n; ++m) {
    std::set<std::uint64_t> seen;
    std::vector<Graph> next;
    const auto fresh = static_cast<Vertex>(m - 1);
    for (const auto& h : level) {
      const auto base = h.edges();
      for (std::uint32_t mask = 1; mask < (1u << (m - 1)); ++mask) {
        auto edges = base;
        for (Vertex v = 0; v < m - 1; ++v) {
          if (mask >> v & 1u) edges.push_back({v, fresh});
        }
        Graph g = Graph::from_edges(m, edges);
        if (seen.insert(canonical_code(g)).second) next.push_back(std::move(g));
      }
    }
    level = std::move(next);
  }
  return level;
}

}  // namespace copnum::verify
