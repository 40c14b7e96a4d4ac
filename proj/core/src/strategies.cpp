#include "copnum/strategies.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "copnum/error.hpp"
#include "copnum/random.hpp"

namespace copnum {

std::optional<std::size_t> capturing_cop(const Graph& g, std::span<const Vertex> cops, Vertex robber) {
  for (std::size_t i = 0; i < cops.size(); ++i) {
    if (cops[i] == robber || g.adjacent(cops[i], robber)) return i;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

GuardPathController::GuardPathController(const Graph& g, std::vector<Vertex> path)
    : graph_(g), path_(std::move(path)) {
  if (path_.empty()) throw PreconditionError("guarded path is empty");
  for (Vertex x : path_) require_vertex(g, x);
  if (!is_geodesic(g, path_)) throw PreconditionError("guarded path is not a shortest path");
  from_start_ = distances(g, path_.front());
  to_end_ = distances(g, path_.back());
  index_.assign(g.order(), kInfinity);
  for (std::uint32_t i = 0; i < path_.size(); ++i) index_[path_[i]] = i;
}

std::uint32_t GuardPathController::shadow(Vertex robber) const {
  const auto k = static_cast<std::uint32_t>(path_.size() - 1);
  return std::min(from_start_[robber], k);
}

std::optional<std::uint32_t> GuardPathController::path_index(Vertex x) const {
  if (index_[x] == kInfinity) return std::nullopt;
  return index_[x];
}

std::vector<Vertex> GuardPathController::move(const GameView& view) const {
  const auto& now = view.current();
  std::vector<Vertex> next = now.cops;
  for (Vertex& cop : next) {
    if (cop == now.robber || graph_.adjacent(cop, now.robber)) {
      cop = now.robber;
      continue;
    }
    auto i = path_index(cop);
    if (!i) {
      cop = step_toward(graph_, to_end_, cop);
      continue;
    }
    const std::uint32_t f = shadow(now.robber);
    if (f + 1 >= *i && f <= *i + 1) {
      cop = path_[f];
    } else {
      cop = path_[f < *i ? *i - 1 : *i + 1];
    }
  }
  return next;
}

// ---------------------------------------------------------------------------

std::string_view to_string(StrategyMode mode) {
  return mode == StrategyMode::Theorem1 ? "thm1" : "thm2";
}

StrategyMode parse_strategy_mode(std::string_view text) {
  if (text == "thm1") return StrategyMode::Theorem1;
  if (text == "thm2") return StrategyMode::Theorem2;
  throw ConfigError("unknown strategy mode '" + std::string(text) + "' (expected thm1 | thm2)");
}

std::uint32_t strategy_radius(const Graph& g, StrategyMode mode) {
  return strategy_radius(g, girth(g), mode);
}

std::uint32_t strategy_radius(const Graph& g, const GirthDecomposition& gd, StrategyMode mode) {
  if (mode == StrategyMode::Theorem1) {
    if (!gd.theorem1_applicable()) {
      throw PreconditionError("random placement needs girth >= 7, got " + std::to_string(*gd.girth));
    }
    return gd.t;
  }
  if (!g.is_regular()) throw PreconditionError("matching strategy needs a regular graph");
  if (gd.acyclic() || *gd.girth < 4) {
    throw PreconditionError("matching strategy needs finite girth >= 4");
  }
  return (*gd.girth - 2) / 2;
}

double cop_density(const Graph& g, StrategyMode mode, double epsilon, std::uint32_t t) {
  const double ti = static_cast<double>(t);
  if (mode == StrategyMode::Theorem1) {
    return epsilon * std::pow(static_cast<double>(g.min_degree()), -ti);
  }
  const double d = static_cast<double>(g.max_degree());
  return 4.0 * epsilon * ti * std::pow(d / 4.0, 1.0 - ti);
}

RandomCopSet sample_cop_set(const Graph& g, StrategyMode mode, double epsilon, std::uint64_t seed,
                            SampleOptions options) {
  return sample_cop_set(g, girth(g), mode, epsilon, seed, options);
}

RandomCopSet sample_cop_set(const Graph& g, const GirthDecomposition& gd, StrategyMode mode,
                            double epsilon, std::uint64_t seed, SampleOptions options) {
  if (!(epsilon > 0) || !std::isfinite(epsilon)) {
    throw PreconditionError("epsilon must be a positive finite number");
  }
  RandomCopSet set;
  set.mode = mode;
  set.epsilon = epsilon;
  set.seed = seed;
  set.t = strategy_radius(g, gd, mode);
  if (mode == StrategyMode::Theorem2 && options.enforce_epsilon_floor) {
    const double floor = 4.0 / static_cast<double>(g.max_degree());
    if (epsilon < floor) {
      throw PreconditionError("matching strategy needs epsilon >= 4/d = " + std::to_string(floor));
    }
  }
  set.p_requested = cop_density(g, mode, epsilon, set.t);
  set.p_used = set.p_requested;
  if (set.p_used > 1.0) {
    if (!options.clamp_to_one) {
      throw PreconditionError("inclusion probability " + std::to_string(set.p_used) +
                              " exceeds 1; use a smaller epsilon");
    }
    set.p_used = 1.0;
    set.clamped = true;
  }
  Rng rng(seed);
  for (Vertex v = 0; v < g.order(); ++v) {
    if (uniform01(rng) < set.p_used) set.cops.push_back(v);
  }
  return set;
}

// ---------------------------------------------------------------------------

Theorem1Coverage theorem1_coverage(const Graph& g, Vertex v, std::span<const Vertex> cops,
                                   std::uint32_t t) {
  require_vertex(g, v);
  Theorem1Coverage cov;
  cov.v = v;
  cov.t = t;
  cov.frontier = sphere(g, v, t);
  cov.covered.assign(cov.frontier.size(), false);

  const auto from_v = distances_within(g, v, 2 * t + 1);
  std::vector<Vertex> engaged;
  for (Vertex c : cops) {
    if (from_v[c] != kInfinity) engaged.push_back(c);
  }
  for (std::size_t i = 0; i < cov.frontier.size(); ++i) {
    const auto from_u = distances_within(g, cov.frontier[i], t + 1);
    for (Vertex c : engaged) {
      if (from_u[c] != kInfinity && from_u[c] + t == from_v[c]) {
        cov.covered[i] = true;
        break;
      }
    }
    if (!cov.covered[i]) cov.uncovered.push_back(cov.frontier[i]);
  }
  return cov;
}

std::vector<Vertex> Theorem1Controller::move(const GameView& view) const {
  const auto& now = view.current();
  const auto& start = view.history.front();
  const auto from_v = distances_within(graph_, view.robber_start(), 2 * t_ + 1);
  const auto to_robber = distances(graph_, now.robber);
  std::vector<Vertex> next = now.cops;
  for (std::size_t i = 0; i < next.size(); ++i) {
    if (from_v[start.cops[i]] == kInfinity) continue;
    next[i] = step_toward(graph_, to_robber, next[i]);
  }
  if (auto c = capturing_cop(graph_, now.cops, now.robber)) next[*c] = now.robber;
  return next;
}

Theorem1Coverage Theorem1Controller::coverage(const GameView& view) const {
  return theorem1_coverage(graph_, view.robber_start(), view.history.front().cops, t_);
}

// ---------------------------------------------------------------------------

CopNeighborhoods::CopNeighborhoods(const Graph& g, std::span<const Vertex> cops, std::uint32_t radius)
    : radius_(radius), offsets_(g.order() + 1, 0), is_cop_(g.order(), 0) {
  std::vector<std::vector<Vertex>> reached;
  reached.reserve(cops.size());
  for (Vertex c : cops) {
    require_vertex(g, c);
    is_cop_[c] = 1;
  }
  std::vector<Vertex> sorted(cops.begin(), cops.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (Vertex c : sorted) {
    reached.push_back(ball(g, c, radius));
    for (Vertex x : reached.back()) ++offsets_[x + 1];
  }
  for (std::size_t x = 0; x < g.order(); ++x) offsets_[x + 1] += offsets_[x];
  cops_.resize(offsets_.back());
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  // Cops are visited in increasing order, so every list comes out sorted.
  for (std::size_t j = 0; j < sorted.size(); ++j) {
    for (Vertex x : reached[j]) cops_[fill[x]++] = sorted[j];
  }
}

std::vector<Vertex> MatchingInstance::cop_side() const {
  std::vector<Vertex> out;
  for (const auto& e : edges) out.insert(out.end(), e.begin(), e.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::size_t MatchingInstance::edge_count() const {
  std::size_t m = 0;
  for (const auto& e : edges) m += e.size();
  return m;
}

MatchingInstance build_hv(const Graph& g, Vertex v, std::span<const Vertex> cops, std::uint32_t t) {
  require_vertex(g, v);
  MatchingInstance inst;
  inst.v = v;
  inst.t = t;
  inst.frontier = sphere(g, v, t);
  std::vector<std::uint8_t> is_cop(g.order(), 0);
  for (Vertex c : cops) {
    require_vertex(g, c);
    is_cop[c] = 1;
  }
  for (Vertex u : inst.frontier) {
    auto& row = inst.edges.emplace_back();
    for (Vertex w : ball(g, u, t + 1)) {
      if (is_cop[w]) row.push_back(w);
    }
  }
  return inst;
}

MatchingInstance build_hv(const Graph& g, Vertex v, std::uint32_t t, const CopNeighborhoods& near) {
  require_vertex(g, v);
  if (near.radius() != t + 1) throw PreconditionError("cop neighborhoods must have radius t + 1");
  MatchingInstance inst;
  inst.v = v;
  inst.t = t;
  inst.frontier = sphere(g, v, t);
  inst.edges.reserve(inst.frontier.size());
  for (Vertex u : inst.frontier) {
    auto cops = near.near(u);
    inst.edges.emplace_back(cops.begin(), cops.end());
  }
  return inst;
}

namespace {

class HopcroftKarp {
 public:
  explicit HopcroftKarp(const MatchingInstance& inst) : inst_(inst) {
    const std::size_t left = inst.frontier.size();
    for (const auto& row : inst.edges) {
      for (Vertex w : row) right_count_ = std::max<std::size_t>(right_count_, w + 1);
    }
    mate_left_.assign(left, kUnmatched);
    mate_right_.assign(right_count_, kUnmatched);
    layer_.assign(left, 0);
  }

  std::size_t run() {
    std::size_t size = greedy();
    while (bfs()) {
      for (std::uint32_t u = 0; u < mate_left_.size(); ++u) {
        if (mate_left_[u] == kUnmatched && dfs(u)) ++size;
      }
    }
    return size;
  }

  const std::vector<Vertex>& mate_left() const { return mate_left_; }
  const std::vector<Vertex>& mate_right() const { return mate_right_; }

 private:
  static constexpr std::uint32_t kFree = kInfinity;

  // A frontier vertex holding a cop takes that cop; then first free cop.
  std::size_t greedy() {
    std::size_t size = 0;
    for (std::uint32_t u = 0; u < mate_left_.size(); ++u) {
      const Vertex self = inst_.frontier[u];
      const auto& row = inst_.edges[u];
      if (std::binary_search(row.begin(), row.end(), self) && mate_right_[self] == kUnmatched) {
        match(u, self);
        ++size;
      }
    }
    for (std::uint32_t u = 0; u < mate_left_.size(); ++u) {
      if (mate_left_[u] != kUnmatched) continue;
      for (Vertex w : inst_.edges[u]) {
        if (mate_right_[w] == kUnmatched) {
          match(u, w);
          ++size;
          break;
        }
      }
    }
    return size;
  }

  void match(std::uint32_t u, Vertex w) {
    mate_left_[u] = w;
    mate_right_[w] = u;
  }

  bool bfs() {
    std::deque<std::uint32_t> queue;
    bool found = false;
    for (std::uint32_t u = 0; u < mate_left_.size(); ++u) {
      if (mate_left_[u] == kUnmatched) {
        layer_[u] = 0;
        queue.push_back(u);
      } else {
        layer_[u] = kFree;
      }
    }
    while (!queue.empty()) {
      const std::uint32_t u = queue.front();
      queue.pop_front();
      for (Vertex w : inst_.edges[u]) {
        const Vertex back = mate_right_[w];
        if (back == kUnmatched) {
          found = true;
        } else if (layer_[back] == kFree) {
          layer_[back] = layer_[u] + 1;
          queue.push_back(back);
        }
      }
    }
    return found;
  }

  bool dfs(std::uint32_t u) {
    for (Vertex w : inst_.edges[u]) {
      const Vertex back = mate_right_[w];
      if (back == kUnmatched || (layer_[back] == layer_[u] + 1 && dfs(back))) {
        match(u, w);
        return true;
      }
    }
    layer_[u] = kFree;
    return false;
  }

  const MatchingInstance& inst_;
  std::size_t right_count_ = 0;
  std::vector<Vertex> mate_left_;
  std::vector<Vertex> mate_right_;
  std::vector<std::uint32_t> layer_;
};

}  // namespace

MatchingResult saturating_matching(const MatchingInstance& inst) {
  HopcroftKarp hk(inst);
  MatchingResult result;
  result.size = hk.run();
  result.mate = hk.mate_left();
  if (result.size == inst.frontier.size()) return result;

  // Alternating reachability from unmatched frontier vertices.
  const auto& mate_right = hk.mate_right();
  std::vector<std::uint8_t> seen_left(inst.frontier.size(), 0);
  std::vector<std::uint8_t> seen_right(mate_right.size(), 0);
  std::deque<std::uint32_t> queue;
  for (std::uint32_t u = 0; u < inst.frontier.size(); ++u) {
    if (result.mate[u] == kUnmatched) {
      seen_left[u] = 1;
      queue.push_back(u);
    }
  }
  while (!queue.empty()) {
    const std::uint32_t u = queue.front();
    queue.pop_front();
    for (Vertex w : inst.edges[u]) {
      if (seen_right[w]) continue;
      seen_right[w] = 1;
      const Vertex back = mate_right[w];
      if (back != kUnmatched && !seen_left[back]) {
        seen_left[back] = 1;
        queue.push_back(back);
      }
    }
  }
  for (std::uint32_t u = 0; u < inst.frontier.size(); ++u) {
    if (seen_left[u]) result.hall_violator.push_back(u);
  }
  for (Vertex w = 0; w < seen_right.size(); ++w) {
    if (seen_right[w]) result.violator_neighbors.push_back(w);
  }
  return result;
}

// ---------------------------------------------------------------------------

const Theorem2Controller::Plan& Theorem2Controller::plan(const GameView& view) const {
  const auto& start = view.history.front();
  const Vertex v = view.robber_start();
  if (plan_.start == v && plan_.initial_cops == start.cops) return plan_;

  Plan p;
  p.start = v;
  p.initial_cops = start.cops;
  p.walks.assign(start.cops.size(), {});
  const auto inst = build_hv(graph_, v, start.cops, t_);
  const auto matching = saturating_matching(inst);
  p.saturated = matching.saturating();
  if (p.saturated) {
    // First cop identity on each matched vertex walks; duplicates idle.
    std::vector<std::uint8_t> claimed(start.cops.size(), 0);
    for (std::size_t i = 0; i < inst.frontier.size(); ++i) {
      const Vertex w = matching.mate[i];
      for (std::size_t c = 0; c < start.cops.size(); ++c) {
        if (start.cops[c] == w && !claimed[c]) {
          claimed[c] = 1;
          p.walks[c] = shortest_path(graph_, w, inst.frontier[i]);
          break;
        }
      }
    }
    p.depth = distances_within(graph_, v, t_);
    p.parent.assign(graph_.order(), kInfinity);
    for (Vertex x = 0; x < graph_.order(); ++x) {
      if (p.depth[x] == kInfinity || x == v) continue;
      for (Vertex y : graph_.neighbors(x)) {
        if (p.depth[y] + 1 == p.depth[x]) {
          p.parent[x] = y;
          break;
        }
      }
    }
  }
  plan_ = std::move(p);
  return plan_;
}

bool Theorem2Controller::degraded(const GameView& view) const { return !plan(view).saturated; }

std::vector<Vertex> Theorem2Controller::move(const GameView& view) const {
  const Plan& p = plan(view);
  if (!p.saturated) return fallback_.move(view);

  const auto& now = view.current();
  const std::uint32_t played = view.cop_moves();
  std::vector<Vertex> next = now.cops;
  const bool robber_inside = p.depth[now.robber] != kInfinity;
  std::vector<std::uint32_t> to_robber;

  for (std::size_t i = 0; i < next.size(); ++i) {
    const auto& walk = p.walks[i];
    if (walk.empty()) continue;
    if (played < t_ + 1) {
      next[i] = walk[std::min<std::size_t>(played + 1, walk.size() - 1)];
      continue;
    }
    const Vertex x = now.cops[i];
    if (robber_inside && p.depth[x] != kInfinity) {
      if (x == now.robber) continue;
      // Move down toward the robber if it lies below x, otherwise up.
      Vertex y = now.robber;
      while (p.depth[y] > p.depth[x] + 1) y = p.parent[y];
      if (p.depth[y] == p.depth[x] + 1 && p.parent[y] == x) {
        next[i] = y;
      } else {
        next[i] = p.parent[x] == kInfinity ? x : p.parent[x];
      }
    } else {
      if (to_robber.empty()) to_robber = distances(graph_, now.robber);
      next[i] = step_toward(graph_, to_robber, x);
    }
  }
  if (auto c = capturing_cop(graph_, now.cops, now.robber)) next[*c] = now.robber;
  return next;
}

}  // namespace copnum
