#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "copnum/graph.hpp"
#include "copnum/simulate.hpp"

namespace copnum {

// ---------------------------------------------------------------------------
// Guarding a geodesic path with one cop.

/// One cop guarding a shortest path p_0 .. p_k. The cop tracks the robber's
/// shadow p_f with f = min(dist(p_0, robber), k). Off the path it walks
/// toward p_k; on the path at p_i it moves to p_f when |f - i| <= 1 and one
/// step toward p_f otherwise. Once synchronized (cop on the shadow) it stays
/// synchronized, so a robber entering the path is caught on the next cop
/// move. A cop on or next to the robber captures.
class GuardPathController final : public CopController {
 public:
  // Throws PreconditionError if `path` is empty or not a geodesic.
  GuardPathController(const Graph& g, std::vector<Vertex> path);

  std::vector<Vertex> move(const GameView& view) const override;
  bool markovian() const override { return true; }
  std::string name() const override { return "guard-path"; }

  std::span<const Vertex> path() const noexcept { return path_; }
  // Index of the robber's shadow on the path.
  std::uint32_t shadow(Vertex robber) const;
  bool synchronized(Vertex cop, Vertex robber) const { return cop == path_[shadow(robber)]; }
  // Position on the path, or nullopt when off it.
  std::optional<std::uint32_t> path_index(Vertex x) const;

 private:
  const Graph& graph_;
  std::vector<Vertex> path_;
  std::vector<std::uint32_t> from_start_;  // dist(p_0, x)
  std::vector<std::uint32_t> to_end_;      // dist(x, p_k)
  std::vector<std::uint32_t> index_;       // path index or kInfinity
};

// ---------------------------------------------------------------------------
// Random cop placement.

enum class StrategyMode : std::uint8_t { Theorem1, Theorem2 };

std::string_view to_string(StrategyMode mode);
// Accepts thm1 | thm2. Throws ConfigError otherwise.
StrategyMode parse_strategy_mode(std::string_view text);

struct SampleOptions {
  // Cap p at 1 (C = V) instead of rejecting an epsilon with p > 1.
  bool clamp_to_one = false;
  // thm2 mode: require epsilon >= 4/d.
  bool enforce_epsilon_floor = true;
};

struct RandomCopSet {
  std::vector<Vertex> cops;  // sorted
  StrategyMode mode = StrategyMode::Theorem1;
  double epsilon = 0;
  std::uint32_t t = 0;
  double p_requested = 0;  // density formula before clamping
  double p_used = 0;
  bool clamped = false;
  std::uint64_t seed = 0;

  double expected_size(std::size_t n) const { return static_cast<double>(n) * p_used; }
};

/// Pursuit radius of a mode. thm1 uses t from g = 4t + 3 + r and needs
/// girth >= 7 (forests count). thm2 uses t = floor((g - 2) / 2), needs a
/// regular graph with finite girth >= 4. Throws PreconditionError otherwise.
std::uint32_t strategy_radius(const Graph& g, StrategyMode mode);
std::uint32_t strategy_radius(const Graph& g, const GirthDecomposition& girth, StrategyMode mode);

/// Per-vertex inclusion probability: eps * delta^-t (thm1) or
/// 4 eps t (d/4)^(1-t) (thm2). Unclamped.
double cop_density(const Graph& g, StrategyMode mode, double epsilon, std::uint32_t t);

/// Independent Bernoulli(p) inclusion of each vertex in index order, with
/// v included iff uniform01(rng) < p for rng seeded by `seed`. For a fixed
/// seed the sets are nested in p. Throws PreconditionError when p > 1 and
/// clamping is off, or when the thm2 epsilon floor is violated.
RandomCopSet sample_cop_set(const Graph& g, StrategyMode mode, double epsilon, std::uint64_t seed,
                            SampleOptions options = {});
RandomCopSet sample_cop_set(const Graph& g, const GirthDecomposition& girth, StrategyMode mode,
                            double epsilon, std::uint64_t seed, SampleOptions options = {});

// ---------------------------------------------------------------------------
// thm1: placement check and pursuit.

/// Frontier vertices u at distance t from the robber start v, and whether
/// each has a cop c with dist(c, v) <= 2t + 1 whose shortest paths to v pass
/// through u, i.e. dist(c, u) + t = dist(c, v).
struct Theorem1Coverage {
  Vertex v = 0;
  std::uint32_t t = 0;
  std::vector<Vertex> frontier;
  std::vector<bool> covered;
  std::vector<Vertex> uncovered;

  // The bad event: some frontier vertex has no covering cop.
  bool bad_event() const noexcept { return !uncovered.empty(); }
};

Theorem1Coverage theorem1_coverage(const Graph& g, Vertex v, std::span<const Vertex> cops,
                                   std::uint32_t t);

/// Cops within 2t + 1 of the robber's start step along a shortest path to the
/// robber's current vertex each turn (smallest next vertex on ties); the
/// rest stay. A cop on or next to the robber captures.
class Theorem1Controller final : public CopController {
 public:
  Theorem1Controller(const Graph& g, std::uint32_t t) : graph_(g), t_(t) {}

  std::vector<Vertex> move(const GameView& view) const override;
  bool markovian() const override { return true; }
  std::string name() const override { return "thm1"; }

  std::uint32_t t() const noexcept { return t_; }
  // Frontier coverage for the start and cops of a game (for reporting).
  Theorem1Coverage coverage(const GameView& view) const;

 private:
  const Graph& graph_;
  std::uint32_t t_;
};

// ---------------------------------------------------------------------------
// thm2: matching-based deployment.

/// For every vertex x, the cops within `radius` of x (sorted).
class CopNeighborhoods {
 public:
  CopNeighborhoods(const Graph& g, std::span<const Vertex> cops, std::uint32_t radius);

  std::span<const Vertex> near(Vertex x) const {
    return {cops_.data() + offsets_[x], cops_.data() + offsets_[x + 1]};
  }
  std::uint32_t radius() const noexcept { return radius_; }
  bool is_cop(Vertex x) const { return is_cop_[x] != 0; }

 private:
  std::uint32_t radius_;
  std::vector<std::size_t> offsets_;
  std::vector<Vertex> cops_;
  std::vector<std::uint8_t> is_cop_;
};

/// The bipartite graph H_v: frontier B_t(v) \ B_{t-1}(v) on one side, the
/// cops within t + 1 of some frontier vertex on the other, with u ~ w iff
/// dist(u, w) <= t + 1.
struct MatchingInstance {
  Vertex v = 0;
  std::uint32_t t = 0;
  std::vector<Vertex> frontier;
  std::vector<std::vector<Vertex>> edges;  // edges[i]: cops adjacent to frontier[i], sorted

  std::vector<Vertex> cop_side() const;
  std::size_t edge_count() const;
};

MatchingInstance build_hv(const Graph& g, Vertex v, std::span<const Vertex> cops, std::uint32_t t);
MatchingInstance build_hv(const Graph& g, Vertex v, std::uint32_t t, const CopNeighborhoods& near);

inline constexpr Vertex kUnmatched = kInfinity;

struct MatchingResult {
  std::vector<Vertex> mate;  // mate[i]: cop matched to frontier[i], or kUnmatched
  std::size_t size = 0;
  // Empty when saturating; otherwise frontier indices S with |N(S)| < |S|.
  std::vector<std::uint32_t> hall_violator;
  std::vector<Vertex> violator_neighbors;  // N(S), sorted

  bool saturating() const noexcept { return hall_violator.empty(); }
};

/// Maximum matching by Hopcroft-Karp (a cop on a frontier vertex is tried
/// first). When the frontier is not saturated the Hall violator is the set
/// of frontier vertices reachable by alternating paths from unmatched ones.
MatchingResult saturating_matching(const MatchingInstance& inst);

/// Phase 1 (cop moves 1 .. t+1): each matched cop walks a shortest path to
/// its frontier vertex. Phase 2: those cops close in on the robber through
/// the BFS tree of B_t(v). Unmatched cops stay. Without a saturating matching
/// for the robber's start the controller plays Theorem1Controller instead.
/// A cop on or next to the robber always captures.
class Theorem2Controller final : public CopController {
 public:
  Theorem2Controller(const Graph& g, std::uint32_t t) : graph_(g), t_(t), fallback_(g, t) {}

  std::vector<Vertex> move(const GameView& view) const override;
  bool markovian() const override { return true; }
  std::string name() const override { return "thm2"; }

  std::uint32_t t() const noexcept { return t_; }
  // True when the game's start has no saturating matching.
  bool degraded(const GameView& view) const;

 private:
  struct Plan {
    Vertex start = kInfinity;
    std::vector<Vertex> initial_cops;
    bool saturated = false;
    std::vector<std::vector<Vertex>> walks;  // per cop identity; empty = idle
    std::vector<std::uint32_t> depth;        // dist from start, kInfinity beyond t
    std::vector<Vertex> parent;              // BFS tree parent within B_t(start)
  };
  const Plan& plan(const GameView& view) const;

  const Graph& graph_;
  std::uint32_t t_;
  Theorem1Controller fallback_;
  mutable Plan plan_;
};

// Index of the first cop on or adjacent to the robber, if any.
std::optional<std::size_t> capturing_cop(const Graph& g, std::span<const Vertex> cops, Vertex robber);

}  // namespace copnum
