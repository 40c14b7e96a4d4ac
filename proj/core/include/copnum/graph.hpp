#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

namespace copnum {

using Vertex = std::uint32_t;

// Distance sentinel for unreachable vertices; strictly greater than any order.
inline constexpr std::uint32_t kInfinity = std::numeric_limits<std::uint32_t>::max();

struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  auto operator<=>(const Edge&) const = default;
};

/// Immutable simple undirected graph on vertices 0..n-1.
///
/// Adjacency is stored in compressed sparse rows with each neighbor list
/// sorted ascending. Degree statistics are computed once at construction.
class Graph {
 public:
  Graph() = default;

  /// Builds a graph from an edge list. Duplicate edges (in either
  /// orientation) are merged. Throws PreconditionError on a self-loop or an
  /// endpoint >= n.
  static Graph from_edges(std::size_t n, std::span<const Edge> edges);

  std::size_t order() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t size() const noexcept { return targets_.size() / 2; }

  std::span<const Vertex> neighbors(Vertex v) const {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }
  std::size_t min_degree() const noexcept { return min_degree_; }
  std::size_t max_degree() const noexcept { return max_degree_; }

  bool adjacent(Vertex a, Vertex b) const;
  bool contains(Vertex v) const noexcept { return v < order(); }

  // Every edge once, with u < v, in lexicographic order.
  std::vector<Edge> edges() const;

  bool is_regular() const noexcept { return min_degree_ == max_degree_; }
  bool is_connected() const;

  // Two-coloring (0/1 per vertex) if bipartite.
  std::optional<std::vector<std::uint8_t>> bipartition() const;
  bool is_bipartite() const { return bipartition().has_value(); }

  bool operator==(const Graph&) const = default;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<Vertex> targets_;
  std::size_t min_degree_ = 0;
  std::size_t max_degree_ = 0;
};

// Throws PreconditionError if v is not a vertex of g.
void require_vertex(const Graph& g, Vertex v);

/// BFS distances from v; unreachable vertices get kInfinity.
std::vector<std::uint32_t> distances(const Graph& g, Vertex v);

/// Multi-source BFS distances to the nearest vertex of `sources`.
std::vector<std::uint32_t> distances(const Graph& g, std::span<const Vertex> sources);

/// BFS distances from v, exploring no further than `radius`; vertices
/// beyond it are kInfinity.
std::vector<std::uint32_t> distances_within(const Graph& g, Vertex v, std::uint32_t radius);

/// B_r(v): vertices within distance r of v, sorted.
std::vector<Vertex> ball(const Graph& g, Vertex v, std::uint32_t radius);

/// B_r(S): vertices within distance r of some vertex of S, sorted.
std::vector<Vertex> ball(const Graph& g, std::span<const Vertex> sources, std::uint32_t radius);

/// Vertices at distance exactly r from v, sorted.
std::vector<Vertex> sphere(const Graph& g, Vertex v, std::uint32_t radius);

/// Neighbor of `from` that lies on a shortest path to the target whose BFS
/// distances are `to_target`. The smallest such index wins. Returns `from`
/// itself when it is the target or the target is unreachable.
Vertex step_toward(const Graph& g, std::span<const std::uint32_t> to_target, Vertex from);

/// Shortest path from a to b (inclusive), following step_toward at every
/// step. Empty when b is unreachable.
std::vector<Vertex> shortest_path(const Graph& g, Vertex a, Vertex b);

/// True when `path` is a walk along edges whose length equals the distance
/// between its endpoints.
bool is_geodesic(const Graph& g, std::span<const Vertex> path);

/// Girth and its decomposition g = 4t + 3 + r.
///
/// For g >= 7, t >= 1 is maximal with 0 <= r <= 3. For 3 <= g < 7 the graph
/// is below the range of the random-placement strategy: t = 0 and
/// r = g - 3. Forests have no finite girth and are treated as "girth at
/// least 7" with t = 1, r = 0.
struct GirthDecomposition {
  std::optional<std::uint32_t> girth;
  std::uint32_t t = 0;
  std::uint32_t r = 0;

  bool acyclic() const noexcept { return !girth.has_value(); }
  // girth >= 7 (or acyclic): the decomposition is meaningful.
  bool theorem1_applicable() const noexcept { return acyclic() || *girth >= 7; }
};

GirthDecomposition decompose_girth(std::optional<std::uint32_t> girth);

/// Shortest-cycle length via BFS from every vertex. Pure function of g.
GirthDecomposition girth(const Graph& g);

/// Frontier-separation set U = B_{t+1}(u) \ U_{w != u, dist(v,w) = t} B_{t+1}(w).
struct Lemma2Certificate {
  Vertex v = 0;
  Vertex u = 0;
  std::uint32_t t = 0;
  std::vector<Vertex> set;    // U, sorted
  std::uint64_t bound = 0;    // (delta - 1)^(t+1)

  bool satisfied() const noexcept { return set.size() >= bound; }
};

/// Uses t from the girth decomposition. Throws PreconditionError when the
/// girth is below 7 or dist(v, u) != t.
Lemma2Certificate lemma2_set(const Graph& g, Vertex v, Vertex u);

/// Same with an explicit t (for forests or caller-chosen radii).
Lemma2Certificate lemma2_set(const Graph& g, Vertex v, Vertex u, std::uint32_t t);

// Saturating integer power; used for (delta-1)^(t+1) style bounds.
std::uint64_t saturating_pow(std::uint64_t base, std::uint32_t exponent);

}  // namespace copnum
