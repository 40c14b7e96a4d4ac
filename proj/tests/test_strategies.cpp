#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "copnum/error.hpp"
#include "copnum/game.hpp"
#include "copnum/generators.hpp"
#include "copnum/policies.hpp"
#include "copnum/random.hpp"
#include "copnum/strategies.hpp"
#include "copnum/verify/oracles.hpp"

using namespace copnum;

namespace {

struct CrossingStats {
  std::size_t crossings = 0;     // robber on the path, not captured on the next cop move
  std::size_t synchronized = 0;  // games where the cop reached the robber's shadow
};

// Random robbers against one guard. A crossing is a robber step onto the path
// made while the cop sat on the robber's shadow that is not answered by
// capture.
CrossingStats path_crossings(const Graph& g, const std::vector<Vertex>& path, std::uint32_t runs,
                             std::uint32_t turns) {
  GuardPathController guard(g, path);
  CrossingStats stats;
  for (std::uint32_t i = 0; i < runs; ++i) {
    RandomRobber robber(trial_seed(77, i));
    Rng rng(trial_seed(78, i));
    const std::vector<Vertex> start{static_cast<Vertex>(uniform_below(rng, g.order()))};
    const auto out = simulate(g, guard, robber, start, turns);
    bool synced = false;
    for (std::size_t ply = 1; ply < out.trace.size(); ++ply) {
      const auto& prev = out.trace[ply - 1];
      const auto& c = out.trace[ply];
      if (prev.turn != Turn::Robber) continue;
      if (!guard.synchronized(prev.cops[0], prev.robber)) continue;
      synced = true;
      if (!guard.path_index(c.robber) || c.robber == c.cops[0]) continue;
      if (ply + 1 >= out.trace.size()) continue;  // out of turns
      if (out.trace[ply + 1].cops[0] != c.robber) ++stats.crossings;
    }
    stats.synchronized += synced || out.captured;
  }
  return stats;
}

MatchingInstance random_instance(std::size_t frontier, std::size_t cops, double p, std::uint64_t seed) {
  Rng rng(seed);
  MatchingInstance inst;
  for (std::size_t i = 0; i < frontier; ++i) {
    inst.frontier.push_back(static_cast<Vertex>(i));
    std::vector<Vertex> row;
    for (Vertex c = 0; c < cops; ++c) {
      if (uniform01(rng) < p) row.push_back(100 + c);
    }
    inst.edges.push_back(row);
  }
  return inst;
}

}  // namespace

TEST(GuardPath, SingleVertex) {
  const Graph g = named_graph("cycle(5)");
  GuardPathController guard(g, {2});
  class Enter final : public RobberController {
   public:
    Vertex place(const Graph&, std::span<const Vertex>, std::uint32_t) const override { return 0; }
    Vertex move(const GameView& view) const override { return view.current().robber + 1; }
    std::string name() const override { return "enter"; }
  };
  Enter robber;
  const std::vector<Vertex> start{2};
  const auto out = simulate(g, guard, robber, start, 10);
  EXPECT_TRUE(out.captured);
  EXPECT_EQ(out.trace.back().robber, 1u);
}

TEST(GuardPath, WholePathCaptures) {
  const Graph g = named_graph("path(5)");
  GuardPathController guard(g, {0, 1, 2, 3, 4});
  const WinTable table = solve_k_cops(g, 1);
  for (Vertex c = 0; c < 5; ++c) {
    for (Vertex r = 0; r < 5; ++r) {
      OptimalRobber optimal(table);
      ForcedStartRobber robber(optimal, r);
      const std::vector<Vertex> start{c};
      const auto out = simulate(g, guard, robber, start, 20);
      EXPECT_TRUE(out.captured) << "cop " << c << " robber " << r;
    }
  }
  EXPECT_TRUE(table.has_winning_placement());
}

TEST(GuardPath, ShadowIsStable) {
  const Graph g = named_graph("cycle(6)");
  GuardPathController guard(g, {0, 1, 2, 3});
  EXPECT_EQ(guard.shadow(0), 0u);
  EXPECT_EQ(guard.shadow(5), 1u);
  EXPECT_EQ(guard.shadow(4), 2u);
  EXPECT_EQ(guard.shadow(3), 3u);
  EXPECT_FALSE(guard.path_index(5).has_value());
  EXPECT_EQ(guard.path_index(2), 2u);
}

TEST(GuardPath, C6NoCrossings) {
  const Graph g = named_graph("cycle(6)");
  const auto stats = path_crossings(g, {0, 1, 2, 3}, 10'000, 40);
  EXPECT_EQ(stats.crossings, 0u);
  EXPECT_EQ(stats.synchronized, 10'000u);
}

TEST(GuardPath, P5NoCrossings) {
  const Graph g = named_graph("path(5)");
  const auto stats = path_crossings(g, {0, 1, 2, 3, 4}, 10'000, 20);
  EXPECT_EQ(stats.crossings, 0u);
  EXPECT_EQ(stats.synchronized, 10'000u);
}

TEST(GuardPath, MarkovianOnLargerGraph) {
  // Geodesic of length 3 in McGee; guard never lets a synchronized robber cross.
  const Graph g = named_graph("mcgee");
  const auto d = distances(g, 0);
  const auto far = static_cast<Vertex>(std::find(d.begin(), d.end(), 3u) - d.begin());
  const auto stats = path_crossings(g, shortest_path(g, 0, far), 2000, 40);
  EXPECT_EQ(stats.crossings, 0u);
}

TEST(GuardPath, RejectsNonGeodesic) {
  const Graph g = named_graph("cycle(6)");
  EXPECT_THROW(GuardPathController(g, {0, 1, 2, 3, 4}), PreconditionError);
  EXPECT_THROW(GuardPathController(g, {}), PreconditionError);
}

TEST(Sampling, DensityFormulas) {
  const Graph k7 = named_graph("complete(7)");  // delta = 6
  EXPECT_DOUBLE_EQ(cop_density(k7, StrategyMode::Theorem1, 0.5, 1), 1.0 / 12);
  const Graph tc = named_graph("tutte_coxeter");  // d = 3, girth 8
  EXPECT_EQ(strategy_radius(tc, StrategyMode::Theorem2), 3u);
  EXPECT_DOUBLE_EQ(cop_density(tc, StrategyMode::Theorem2, 1.0, 3), 12.0 * std::pow(0.75, -2));
  EXPECT_EQ(strategy_radius(named_graph("mcgee"), StrategyMode::Theorem1), 1u);
  EXPECT_THROW((void)strategy_radius(named_graph("petersen"), StrategyMode::Theorem1), PreconditionError);
  EXPECT_THROW((void)strategy_radius(named_graph("random_tree(8,1)"), StrategyMode::Theorem2), PreconditionError);
}

TEST(Sampling, FullDensityTakesEverything) {
  const Graph g = named_graph("mcgee");
  const auto set = sample_cop_set(g, StrategyMode::Theorem1, 3.0, 9);
  EXPECT_DOUBLE_EQ(set.p_used, 1.0);
  EXPECT_EQ(set.cops.size(), 24u);
  EXPECT_THROW((void)sample_cop_set(g, StrategyMode::Theorem1, 3.5, 9), PreconditionError);
  const auto clamped = sample_cop_set(g, StrategyMode::Theorem1, 3.5, 9, {.clamp_to_one = true});
  EXPECT_TRUE(clamped.clamped);
  EXPECT_EQ(clamped.cops.size(), 24u);
  EXPECT_THROW((void)sample_cop_set(g, StrategyMode::Theorem1, 0.0, 9), PreconditionError);
}

TEST(Sampling, EpsilonFloorInThm2) {
  const Graph g = named_graph("tutte_coxeter");
  EXPECT_THROW((void)sample_cop_set(g, StrategyMode::Theorem2, 0.1, 1), PreconditionError);
  const auto set = sample_cop_set(g, StrategyMode::Theorem2, 0.01, 1, {.enforce_epsilon_floor = false});
  EXPECT_NEAR(set.p_used, 0.01 * 12.0 / 0.5625, 1e-12);
}

TEST(Sampling, McGeeMeanSize) {
  const Graph g = named_graph("mcgee");
  const std::uint32_t seeds = 10'000;
  double total = 0;
  for (std::uint32_t s = 0; s < seeds; ++s) {
    total += static_cast<double>(sample_cop_set(g, StrategyMode::Theorem1, 1.0, trial_seed(3, s)).cops.size());
  }
  const double mean = total / seeds;
  const double sigma = std::sqrt(24.0 * (1.0 / 3) * (2.0 / 3) / seeds);
  EXPECT_NEAR(mean, 8.0, 3 * sigma);
}

TEST(Sampling, NestedInEpsilon) {
  const Graph g = named_graph("mcgee");
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const auto small = sample_cop_set(g, StrategyMode::Theorem1, 0.5, seed);
    const auto big = sample_cop_set(g, StrategyMode::Theorem1, 2.0, seed);
    EXPECT_TRUE(std::includes(big.cops.begin(), big.cops.end(), small.cops.begin(), small.cops.end()));
  }
}

TEST(Thm1, CoverageByDefinition) {
  const Graph g = named_graph("mcgee");
  const auto table = verify::all_pairs_distances(g);
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const auto set = sample_cop_set(g, StrategyMode::Theorem1, 1.0, seed);
    for (Vertex v = 0; v < g.order(); ++v) {
      const auto cov = theorem1_coverage(g, v, set.cops, 1);
      ASSERT_EQ(cov.frontier.size(), 3u);
      for (std::size_t i = 0; i < cov.frontier.size(); ++i) {
        const Vertex u = cov.frontier[i];
        bool want = false;
        for (Vertex c : set.cops) want = want || (table[c][v] <= 3 && table[c][u] + 1 == table[c][v]);
        EXPECT_EQ(cov.covered[i], want);
      }
    }
  }
}

TEST(Thm1, TrivialCaptures) {
  const Graph g = named_graph("mcgee");
  Theorem1Controller controller(g, 1);
  GreedyRobber greedy;
  std::vector<Vertex> all(24);
  for (Vertex v = 0; v < 24; ++v) all[v] = v;
  const auto everywhere = simulate(g, controller, greedy, all, 3);
  EXPECT_TRUE(everywhere.captured);
  EXPECT_EQ(everywhere.cop_moves, 0u);

  ForcedStartRobber forced(greedy, 5);
  const std::vector<Vertex> one{5};
  EXPECT_EQ(simulate(g, controller, forced, one, 3).cop_moves, 0u);
}

TEST(Thm1, CertifiedStartsAreCaptured) {
  const Graph g = named_graph("mcgee");
  Theorem1Controller controller(g, 1);
  LookaheadRobber robber(controller, std::nullopt);
  std::size_t certified = 0;
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const auto set = sample_cop_set(g, StrategyMode::Theorem1, 1.5, seed);
    for (Vertex v = 0; v < g.order(); v += 5) {
      if (theorem1_coverage(g, v, set.cops, 1).bad_event()) continue;
      ++certified;
      ForcedStartRobber forced(robber, v);
      const auto out = simulate(g, controller, forced, set.cops, 3);
      EXPECT_TRUE(out.captured) << "seed " << seed << " v " << v;
    }
  }
  EXPECT_GT(certified, 0u);
}

TEST(Matching, FrontierIsNeighborhoodForT1) {
  const Graph g = named_graph("mcgee");
  const auto inst = build_hv(g, 4, std::vector<Vertex>{}, 1);
  const auto nb = g.neighbors(4);
  EXPECT_EQ(inst.frontier, std::vector<Vertex>(nb.begin(), nb.end()));
  EXPECT_TRUE(inst.cop_side().empty());
  const auto m = saturating_matching(inst);
  EXPECT_FALSE(m.saturating());
  EXPECT_FALSE(m.hall_violator.empty());
  EXPECT_TRUE(verify::is_hall_violator(inst, m.hall_violator));
}

TEST(Matching, AllVerticesIdentity) {
  const Graph g = named_graph("mcgee");
  std::vector<Vertex> all(24);
  for (Vertex v = 0; v < 24; ++v) all[v] = v;
  for (Vertex v = 0; v < 24; ++v) {
    const auto inst = build_hv(g, v, all, 1);
    const auto m = saturating_matching(inst);
    ASSERT_TRUE(m.saturating());
    EXPECT_EQ(m.mate, inst.frontier);
  }
}

TEST(Matching, HallFailure) {
  MatchingInstance inst;
  inst.frontier = {1, 2};
  inst.edges = {{7}, {7}};
  const auto m = saturating_matching(inst);
  EXPECT_EQ(m.size, 1u);
  EXPECT_EQ(m.hall_violator, (std::vector<std::uint32_t>{0, 1}));
  EXPECT_EQ(m.violator_neighbors, (std::vector<Vertex>{7}));
}

TEST(Matching, DisjointPairs) {
  MatchingInstance inst;
  inst.frontier = {1, 2, 3};
  inst.edges = {{10}, {11}, {12}};
  const auto m = saturating_matching(inst);
  EXPECT_TRUE(m.saturating());
  EXPECT_EQ(m.mate, (std::vector<Vertex>{10, 11, 12}));
}

TEST(Matching, MatchesExhaustiveOracle) {
  for (std::uint64_t seed = 1; seed <= 400; ++seed) {
    const std::size_t f = 1 + seed % 10;
    const auto inst = random_instance(f, 1 + seed % 9, 0.25, seed);
    const auto m = saturating_matching(inst);
    EXPECT_EQ(m.size, verify::max_matching_exhaustive(inst)) << "seed " << seed;
    EXPECT_EQ(m.size, verify::max_matching_deficiency(inst)) << "seed " << seed;
    EXPECT_TRUE(verify::is_valid_matching(inst, m.mate));
    if (!m.saturating()) {
      EXPECT_TRUE(verify::is_hall_violator(inst, m.hall_violator));
    } else {
      EXPECT_EQ(m.size, f);
    }
  }
}

TEST(Matching, NeighborhoodIndexAgreesWithDirectBuild) {
  const Graph g = named_graph("tutte_coxeter");
  const auto set = sample_cop_set(g, StrategyMode::Theorem2, 0.02, 4, {.enforce_epsilon_floor = false});
  CopNeighborhoods near(g, set.cops, 4);
  for (Vertex v = 0; v < g.order(); ++v) {
    const auto a = build_hv(g, v, set.cops, 3);
    const auto b = build_hv(g, v, 3, near);
    EXPECT_EQ(a.frontier, b.frontier);
    EXPECT_EQ(a.edges, b.edges);
  }
  CopNeighborhoods wrong(g, set.cops, 2);
  EXPECT_THROW((void)build_hv(g, 0, 3, wrong), PreconditionError);
}

TEST(Thm2, AllVerticesCapture) {
  const Graph g = named_graph("tutte_coxeter");
  std::vector<Vertex> all(g.order());
  for (Vertex v = 0; v < g.order(); ++v) all[v] = v;
  Theorem2Controller controller(g, 3);
  GreedyRobber greedy;
  const auto out = simulate(g, controller, greedy, all, 7);
  EXPECT_TRUE(out.captured);
}

TEST(Thm2, AdjacentCopCapturesImmediately) {
  const Graph g = named_graph("tutte_coxeter");
  Theorem2Controller controller(g, 3);
  GreedyRobber greedy;
  const Vertex r = 10;
  ForcedStartRobber forced(greedy, r);
  const std::vector<Vertex> cops{g.neighbors(r)[0]};
  const auto out = simulate(g, controller, forced, cops, 7);
  EXPECT_TRUE(out.captured);
  EXPECT_EQ(out.cop_moves, 1u);
}

TEST(Thm2, SaturatedStartsCaptureWithinBound) {
  const Graph g = named_graph("tutte_coxeter");
  const std::uint32_t t = 3;
  std::size_t saturated = 0;
  std::size_t unsaturated = 0;
  const double eps = 0.4 / cop_density(g, StrategyMode::Theorem2, 1.0, t);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto set = sample_cop_set(g, StrategyMode::Theorem2, eps, seed, {.enforce_epsilon_floor = false});
    Theorem2Controller controller(g, t);
    LookaheadRobber robber(controller, std::nullopt);
    for (Vertex v = 0; v < g.order(); v += 3) {
      if (!saturating_matching(build_hv(g, v, set.cops, t)).saturating()) {
        ++unsaturated;
        continue;
      }
      ++saturated;
      ForcedStartRobber forced(robber, v);
      const auto out = simulate(g, controller, forced, set.cops, 2 * t + 1);
      EXPECT_TRUE(out.captured) << "seed " << seed << " v " << v;
    }
  }
  EXPECT_GT(saturated, 0u);
  EXPECT_GT(unsaturated, 0u);
}
