#include "copnum/graph.hpp"

#include <algorithm>
#include <string>

#include "copnum/error.hpp"

namespace copnum {

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges) {
  if (n >= kInfinity) throw PreconditionError("graph order too large");
  std::vector<Edge> directed;
  directed.reserve(edges.size() * 2);
  for (const Edge& e : edges) {
    if (e.u >= n || e.v >= n) {
      throw PreconditionError("edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                              ") has an endpoint outside [0, " + std::to_string(n) + ")");
    }
    if (e.u == e.v) throw PreconditionError("self-loop at vertex " + std::to_string(e.u));
    directed.push_back({e.u, e.v});
    directed.push_back({e.v, e.u});
  }
  std::sort(directed.begin(), directed.end());
  directed.erase(std::unique(directed.begin(), directed.end()), directed.end());

  Graph g;
  g.offsets_.assign(n + 1, 0);
  g.targets_.reserve(directed.size());
  for (const Edge& e : directed) {
    ++g.offsets_[e.u + 1];
    g.targets_.push_back(e.v);
  }
  for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] += g.offsets_[i];

  if (n > 0) {
    g.min_degree_ = g.max_degree_ = g.degree(0);
    for (Vertex v = 1; v < n; ++v) {
      g.min_degree_ = std::min(g.min_degree_, g.degree(v));
      g.max_degree_ = std::max(g.max_degree_, g.degree(v));
    }
  }
  return g;
}

bool Graph::adjacent(Vertex a, Vertex b) const {
  auto nb = neighbors(a);
  return std::binary_search(nb.begin(), nb.end(), b);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(size());
  for (Vertex u = 0; u < order(); ++u) {
    for (Vertex v : neighbors(u)) {
      if (u < v) out.push_back({u, v});
    }
  }
  return out;
}

bool Graph::is_connected() const {
  if (order() == 0) return true;
  auto dist = distances(*this, Vertex{0});
  return std::none_of(dist.begin(), dist.end(), [](std::uint32_t d) { return d == kInfinity; });
}

std::optional<std::vector<std::uint8_t>> Graph::bipartition() const {
  constexpr std::uint8_t kUnset = 2;
  std::vector<std::uint8_t> color(order(), kUnset);
  std::vector<Vertex> queue;
  for (Vertex s = 0; s < order(); ++s) {
    if (color[s] != kUnset) continue;
    color[s] = 0;
    queue.assign(1, s);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      Vertex x = queue[head];
      for (Vertex y : neighbors(x)) {
        if (color[y] == kUnset) {
          color[y] = color[x] ^ 1;
          queue.push_back(y);
        } else if (color[y] == color[x]) {
          return std::nullopt;
        }
      }
    }
  }
  return color;
}

void require_vertex(const Graph& g, Vertex v) {
  if (!g.contains(v)) {
    throw PreconditionError("vertex " + std::to_string(v) + " out of range [0, " +
                            std::to_string(g.order()) + ")");
  }
}

namespace {

void bfs(const Graph& g, std::vector<std::uint32_t>& dist, std::vector<Vertex>& queue,
         std::uint32_t radius) {
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Vertex x = queue[head];
    if (dist[x] >= radius) continue;
    for (Vertex y : g.neighbors(x)) {
      if (dist[y] == kInfinity) {
        dist[y] = dist[x] + 1;
        queue.push_back(y);
      }
    }
  }
}

std::vector<Vertex> collect(const std::vector<std::uint32_t>& dist, std::uint32_t lo,
                            std::uint32_t hi) {
  std::vector<Vertex> out;
  for (Vertex x = 0; x < dist.size(); ++x) {
    if (dist[x] >= lo && dist[x] <= hi) out.push_back(x);
  }
  return out;
}

}  // namespace

std::vector<std::uint32_t> distances(const Graph& g, Vertex v) {
  return distances_within(g, v, kInfinity);
}

std::vector<std::uint32_t> distances(const Graph& g, std::span<const Vertex> sources) {
  std::vector<std::uint32_t> dist(g.order(), kInfinity);
  std::vector<Vertex> queue;
  for (Vertex s : sources) {
    require_vertex(g, s);
    if (dist[s] != 0) {
      dist[s] = 0;
      queue.push_back(s);
    }
  }
  bfs(g, dist, queue, kInfinity);
  return dist;
}

std::vector<std::uint32_t> distances_within(const Graph& g, Vertex v, std::uint32_t radius) {
  require_vertex(g, v);
  std::vector<std::uint32_t> dist(g.order(), kInfinity);
  std::vector<Vertex> queue{v};
  dist[v] = 0;
  bfs(g, dist, queue, radius);
  return dist;
}

std::vector<Vertex> ball(const Graph& g, Vertex v, std::uint32_t radius) {
  return collect(distances_within(g, v, radius), 0, radius);
}

std::vector<Vertex> ball(const Graph& g, std::span<const Vertex> sources, std::uint32_t radius) {
  std::vector<std::uint32_t> dist(g.order(), kInfinity);
  std::vector<Vertex> queue;
  for (Vertex s : sources) {
    require_vertex(g, s);
    if (dist[s] != 0) {
      dist[s] = 0;
      queue.push_back(s);
    }
  }
  bfs(g, dist, queue, radius);
  return collect(dist, 0, radius);
}

std::vector<Vertex> sphere(const Graph& g, Vertex v, std::uint32_t radius) {
  return collect(distances_within(g, v, radius), radius, radius);
}

Vertex step_toward(const Graph& g, std::span<const std::uint32_t> to_target, Vertex from) {
  std::uint32_t here = to_target[from];
  if (here == 0 || here == kInfinity) return from;
  for (Vertex y : g.neighbors(from)) {
    if (to_target[y] + 1 == here) return y;
  }
  return from;
}

std::vector<Vertex> shortest_path(const Graph& g, Vertex a, Vertex b) {
  require_vertex(g, a);
  auto to_b = distances(g, b);
  if (to_b[a] == kInfinity) return {};
  std::vector<Vertex> path{a};
  while (path.back() != b) path.push_back(step_toward(g, to_b, path.back()));
  return path;
}

bool is_geodesic(const Graph& g, std::span<const Vertex> path) {
  if (path.empty()) return false;
  for (Vertex v : path) {
    if (!g.contains(v)) return false;
  }
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    if (!g.adjacent(path[i], path[i + 1])) return false;
  }
  return distances(g, path.front())[path.back()] == path.size() - 1;
}

GirthDecomposition decompose_girth(std::optional<std::uint32_t> girth) {
  GirthDecomposition d;
  d.girth = girth;
  if (!girth) {
    d.t = 1;
    d.r = 0;
  } else if (*girth >= 7) {
    d.t = (*girth - 3) / 4;
    d.r = (*girth - 3) % 4;
  } else {
    d.t = 0;
    d.r = *girth >= 3 ? *girth - 3 : 0;
  }
  return d;
}

GirthDecomposition girth(const Graph& g) {
  const std::size_t n = g.order();
  std::uint32_t best = kInfinity;
  std::vector<std::uint32_t> dist(n, kInfinity);
  std::vector<Vertex> parent(n);
  std::vector<Vertex> queue;
  for (Vertex s = 0; s < n; ++s) {
    queue.assign(1, s);
    dist[s] = 0;
    parent[s] = s;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      Vertex x = queue[head];
      // Any cycle closed from here on has length >= 2*dist[x].
      if (best != kInfinity && 2 * dist[x] >= best) break;
      for (Vertex y : g.neighbors(x)) {
        if (dist[y] == kInfinity) {
          dist[y] = dist[x] + 1;
          parent[y] = x;
          queue.push_back(y);
        } else if (y != parent[x]) {
          best = std::min(best, dist[x] + dist[y] + 1);
        }
      }
    }
    for (Vertex x : queue) dist[x] = kInfinity;
  }
  if (best == kInfinity) return decompose_girth(std::nullopt);
  return decompose_girth(best);
}

std::uint64_t saturating_pow(std::uint64_t base, std::uint32_t exponent) {
  std::uint64_t result = 1;
  for (std::uint32_t i = 0; i < exponent; ++i) {
    if (base != 0 && result > std::numeric_limits<std::uint64_t>::max() / base) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    result *= base;
  }
  return result;
}

Lemma2Certificate lemma2_set(const Graph& g, Vertex v, Vertex u) {
  auto dec = girth(g);
  if (!dec.theorem1_applicable()) {
    throw PreconditionError("frontier separation requires girth >= 7 (girth is " +
                            std::to_string(*dec.girth) + ")");
  }
  return lemma2_set(g, v, u, dec.t);
}

Lemma2Certificate lemma2_set(const Graph& g, Vertex v, Vertex u, std::uint32_t t) {
  require_vertex(g, v);
  require_vertex(g, u);
  auto from_v = distances(g, v);
  if (from_v[u] != t) {
    throw PreconditionError("dist(v, u) must equal t = " + std::to_string(t));
  }
  std::vector<std::uint8_t> in_union(g.order(), 0);
  std::vector<Vertex> others;
  for (Vertex w = 0; w < g.order(); ++w) {
    if (w != u && from_v[w] == t) others.push_back(w);
  }
  for (Vertex x : ball(g, others, t + 1)) in_union[x] = 1;

  Lemma2Certificate cert;
  cert.v = v;
  cert.u = u;
  cert.t = t;
  for (Vertex x : ball(g, u, t + 1)) {
    if (!in_union[x]) cert.set.push_back(x);
  }
  std::uint64_t base = g.min_degree() == 0 ? 0 : g.min_degree() - 1;
  cert.bound = saturating_pow(base, t + 1);
  return cert;
}

}  // namespace copnum
