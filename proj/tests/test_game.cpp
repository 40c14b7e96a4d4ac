#include <gtest/gtest.h>

#include <algorithm>

#include "copnum/error.hpp"
#include "copnum/game.hpp"
#include "copnum/generators.hpp"
#include "copnum/graph_io.hpp"
#include "copnum/policies.hpp"
#include "copnum/random.hpp"
#include "copnum/simulate.hpp"
#include "copnum/verify/enumerate.hpp"
#include "copnum/verify/oracles.hpp"

using namespace copnum;

namespace {

Graph random_connected(std::size_t n, double p, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Edge> edges;
  for (Vertex b = 1; b < n; ++b) edges.push_back({static_cast<Vertex>(uniform_below(rng, b)), b});
  for (Vertex a = 0; a < n; ++a) {
    for (Vertex b = a + 1; b < n; ++b) {
      if (uniform01(rng) < p) edges.push_back({a, b});
    }
  }
  return Graph::from_edges(n, edges);
}

void expect_matches_oracle(const Graph& g, std::size_t k) {
  const WinTable table = solve_k_cops(g, k);
  const verify::MinimaxOracle oracle(g, k);
  const auto& idx = table.indexer();
  std::vector<Vertex> cops(k);
  for (std::uint64_t m = 0; m < idx.count(); ++m) {
    idx.unrank(m, cops);
    auto reversed = cops;
    std::reverse(reversed.begin(), reversed.end());
    for (Vertex r = 0; r < g.order(); ++r) {
      for (Turn turn : {Turn::Cops, Turn::Robber}) {
        const auto want = oracle.plies(cops, r, turn == Turn::Cops);
        ASSERT_EQ(table.plies(cops, r, turn), want);
        // Cop identity does not matter.
        ASSERT_EQ(oracle.plies(reversed, r, turn == Turn::Cops), want);
      }
    }
  }
}

}  // namespace

TEST(MultisetIndexer, RankUnrankBijection) {
  for (std::size_t n : {1u, 4u, 7u}) {
    for (std::size_t k : {1u, 2u, 3u}) {
      const MultisetIndexer idx(n, k);
      EXPECT_EQ(idx.count(), MultisetIndexer::multiset_count(n, k));
      std::vector<Vertex> buf(k);
      for (std::uint64_t m = 0; m < idx.count(); ++m) {
        idx.unrank(m, buf);
        EXPECT_TRUE(std::is_sorted(buf.begin(), buf.end()));
        EXPECT_EQ(idx.rank(buf), m);
      }
    }
  }
  EXPECT_EQ(MultisetIndexer::multiset_count(10, 3), 220u);
}

TEST(Solver, K2OneCopAlwaysWins) {
  const Graph g = named_graph("complete(2)");
  const WinTable t = solve_k_cops(g, 1);
  for (Vertex c = 0; c < 2; ++c) {
    for (Vertex r = 0; r < 2; ++r) {
      const std::vector<Vertex> cops{c};
      EXPECT_TRUE(t.cop_wins(cops, r, Turn::Cops));
      EXPECT_TRUE(t.cop_wins(cops, r, Turn::Robber));
    }
  }
}

TEST(Solver, C4OneCopLoses) {
  const WinTable t = solve_k_cops(named_graph("cycle(4)"), 1);
  EXPECT_FALSE(t.has_winning_placement());
  const std::vector<Vertex> cops{0};
  EXPECT_FALSE(t.cop_wins(cops, 2, Turn::Cops));
}

TEST(Solver, PetersenTwoVersusThree) {
  const Graph g = named_graph("petersen");
  const WinTable two = solve_k_cops(g, 2);
  EXPECT_FALSE(two.has_winning_placement());
  const WinTable three = solve_k_cops(g, 3);
  EXPECT_TRUE(three.has_winning_placement());
}

TEST(Solver, MatchesOracleOnRandomGraphs) {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    const Graph g = random_connected(7 + seed % 3, 0.15, seed);
    expect_matches_oracle(g, 1);
    expect_matches_oracle(g, 2);
  }
}

TEST(Solver, MatchesOracleThreeCops) {
  expect_matches_oracle(named_graph("cycle(6)"), 3);
  expect_matches_oracle(named_graph("complete_bipartite(2,3)"), 3);
}

TEST(Solver, BudgetExceeded) {
  SolverOptions opts;
  opts.state_budget = 100;
  try {
    (void)solve_k_cops(named_graph("petersen"), 2, opts);
    FAIL() << "expected BudgetExceeded";
  } catch (const BudgetExceeded& e) {
    EXPECT_EQ(e.budget(), 100u);
    EXPECT_EQ(e.required(), 55u * 10u * 2u);
  }
}

TEST(Solver, Preconditions) {
  EXPECT_THROW((void)solve_k_cops(load_graph("0 1\n2 3"), 1), PreconditionError);
  EXPECT_THROW((void)solve_k_cops(named_graph("cycle(4)"), 0), PreconditionError);
}

TEST(CopNumber, Trees) {
  for (int n = 1; n <= 10; ++n) {
    EXPECT_EQ(cop_number_exact(named_graph("random_tree(" + std::to_string(n) + ",9)"), 3).value, 1u);
  }
}

TEST(CopNumber, CyclesCompleteAndPetersen) {
  for (int n = 4; n <= 8; ++n) EXPECT_EQ(cop_number_exact(named_graph("cycle(" + std::to_string(n) + ")"), 3).value, 2u);
  for (int n = 1; n <= 6; ++n) EXPECT_EQ(cop_number_exact(named_graph("complete(" + std::to_string(n) + ")"), 3).value, 1u);
  EXPECT_EQ(cop_number_exact(named_graph("petersen"), 3).value, 3u);
  const auto capped = cop_number_exact(named_graph("petersen"), 2);
  EXPECT_FALSE(capped.value.has_value());
  EXPECT_EQ(capped.k_max, 2u);
}

TEST(CaptureTime, Examples) {
  EXPECT_EQ(capture_time(named_graph("complete(5)"), 1), 1u);
  EXPECT_EQ(capture_time(named_graph("path(5)"), 1), 2u);
  const WinTable p5 = solve_k_cops(named_graph("path(5)"), 1);
  EXPECT_EQ(p5.best_placement(), (std::vector<Vertex>{2}));
  EXPECT_GT(capture_time(named_graph("cycle(4)"), 2), 0u);
  EXPECT_THROW((void)capture_time(named_graph("cycle(4)"), 1), PreconditionError);
}

TEST(CaptureTime, MovesAreHalfPlies) {
  const WinTable t = solve_k_cops(named_graph("path(5)"), 1);
  const std::vector<Vertex> cops{0};
  EXPECT_EQ(t.plies(cops, 4, Turn::Cops), 7u);
  EXPECT_EQ(t.cop_moves_to_capture(cops, 4), 4u);
}

TEST(Simulate, StartOnCop) {
  const Graph g = named_graph("path(5)");
  StationaryCops cops;
  GreedyRobber greedy;
  ForcedStartRobber robber(greedy, 1);
  const std::vector<Vertex> start{1, 3};
  const auto out = simulate(g, cops, robber, start, 10);
  EXPECT_TRUE(out.captured);
  EXPECT_EQ(out.cop_moves, 0u);
}

TEST(Simulate, ChaseOnPathWithinFour) {
  const Graph g = named_graph("path(5)");
  ChaseCops chase;
  for (Vertex c = 0; c < 5; ++c) {
    for (Vertex r = 0; r < 5; ++r) {
      GreedyRobber greedy;
      ForcedStartRobber robber(greedy, r);
      const std::vector<Vertex> start{c};
      const auto out = simulate(g, chase, robber, start, 10);
      EXPECT_TRUE(out.captured);
      EXPECT_LE(out.cop_moves, 4u);
    }
  }
}

TEST(Simulate, ZeroTurnsNoCapture) {
  const Graph g = named_graph("path(5)");
  ChaseCops chase;
  GreedyRobber greedy;
  ForcedStartRobber robber(greedy, 4);
  const std::vector<Vertex> start{0};
  const auto out = simulate(g, chase, robber, start, 0);
  EXPECT_FALSE(out.captured);
  EXPECT_EQ(out.cop_moves, 0u);
  EXPECT_FALSE(out.cops_win());
}

TEST(Simulate, RobberSteppingOntoCopIsCaptured) {
  class Suicidal final : public RobberController {
   public:
    Vertex place(const Graph&, std::span<const Vertex>, std::uint32_t) const override { return 3; }
    Vertex move(const GameView& view) const override { return view.current().robber - 1; }
    std::string name() const override { return "suicidal"; }
  };
  const Graph g = named_graph("path(5)");
  StationaryCops cops;
  Suicidal robber;
  const std::vector<Vertex> start{1};
  const auto out = simulate(g, cops, robber, start, 10);
  EXPECT_TRUE(out.captured);
  // 3 -> 2 after the first cop move, 2 -> 1 after the second.
  EXPECT_EQ(out.cop_moves, 2u);
  EXPECT_EQ(out.trace.back().robber, 1u);
  EXPECT_EQ(out.trace.back().turn, Turn::Cops);
}

TEST(Simulate, IllegalMovesForfeit) {
  class Teleport final : public RobberController {
   public:
    Vertex place(const Graph&, std::span<const Vertex>, std::uint32_t) const override { return 4; }
    Vertex move(const GameView&) const override { return 0; }
    std::string name() const override { return "teleport"; }
  };
  const Graph g = named_graph("path(7)");
  StationaryCops cops;
  Teleport robber;
  const std::vector<Vertex> start{6};
  const auto out = simulate(g, cops, robber, start, 10);
  EXPECT_EQ(out.forfeit, Forfeit::Robber);
  EXPECT_TRUE(out.cops_win());
  EXPECT_FALSE(legal_robber_move(g, 4, 0));
  EXPECT_TRUE(legal_cop_move(g, std::vector<Vertex>{1, 2}, std::vector<Vertex>{2, 2}));
  EXPECT_FALSE(legal_cop_move(g, std::vector<Vertex>{1}, std::vector<Vertex>{3}));
}

TEST(Simulate, OptimalPlayMatchesTable) {
  const Graph g = named_graph("petersen");
  const WinTable table = solve_k_cops(g, 3);
  const auto placement = *table.best_placement();
  OptimalCops cops(table);
  OptimalRobber robber(table);
  const auto out = simulate(g, cops, robber, placement, 20);
  EXPECT_TRUE(out.captured);
  EXPECT_EQ(out.cop_moves, *table.placement_capture_time(placement));
  EXPECT_EQ(table.capture_time(), table.placement_capture_time(placement));
}

TEST(RobberPolicy, GreedyTieStays) {
  // Cop at 1 on P3, robber at 2: staying and moving to 1 both leave distance <= 1.
  const Graph g = named_graph("path(3)");
  StationaryCops cops;
  GreedyRobber greedy;
  std::vector<Configuration> history{{{1}, 2, Turn::Cops}, {{1}, 2, Turn::Robber}};
  const GameView view{g, history, 5};
  EXPECT_EQ(greedy.move(view), 2u);
}

TEST(RobberPolicy, GreedyWithoutCopsStays) {
  const Graph g = named_graph("cycle(5)");
  GreedyRobber greedy;
  std::vector<Configuration> history{{{}, 3, Turn::Cops}, {{}, 3, Turn::Robber}};
  const GameView view{g, history, 5};
  EXPECT_EQ(greedy.move(view), 3u);
}

TEST(RobberPolicy, FullLookaheadEscapesOneCopOnC4) {
  const Graph g = named_graph("cycle(4)");
  ChaseCops chase;
  LookaheadRobber robber(chase, std::nullopt);
  for (std::uint32_t turns : {1u, 5u, 12u}) {
    for (Vertex c = 0; c < 4; ++c) {
      const std::vector<Vertex> start{c};
      EXPECT_FALSE(simulate(g, chase, robber, start, turns).captured);
    }
  }
  const WinTable table = solve_k_cops(g, 1);
  OptimalCops optimal(table);
  LookaheadRobber against_optimal(optimal, std::nullopt);
  const std::vector<Vertex> start{0};
  EXPECT_FALSE(simulate(g, optimal, against_optimal, start, 12).captured);
}

TEST(RobberPolicy, RandomIsReproducible) {
  const Graph g = named_graph("petersen");
  ChaseCops chase;
  const std::vector<Vertex> start{0};
  const auto a = simulate(g, chase, RandomRobber(5), start, 30);
  const auto b = simulate(g, chase, RandomRobber(5), start, 30);
  ASSERT_EQ(a.trace.size(), b.trace.size());
  for (std::size_t i = 0; i < a.trace.size(); ++i) EXPECT_EQ(a.trace[i].robber, b.trace[i].robber);
}

TEST(RobberPolicy, Specs) {
  StationaryCops cops;
  EXPECT_EQ(make_robber("greedy", cops, 1)->name(), "greedy");
  EXPECT_NO_THROW(validate_robber_spec("lookahead:3"));
  EXPECT_NO_THROW(validate_robber_spec("lookahead:full"));
  EXPECT_THROW(validate_robber_spec("lookahead:0"), ConfigError);
  EXPECT_THROW(validate_robber_spec("sneaky"), ConfigError);
}

TEST(Enumerate, ConnectedGraphCounts) {
  const std::size_t expected[] = {1, 1, 2, 6, 21, 112};
  for (std::size_t n = 1; n <= 6; ++n) EXPECT_EQ(verify::connected_graphs(n).size(), expected[n - 1]);
}
