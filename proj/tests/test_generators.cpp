#include <gtest/gtest.h>

#include <cmath>

#include "copnum/error.hpp"
#include "copnum/generators.hpp"
#include "copnum/graph.hpp"
#include "copnum/verify/oracles.hpp"

using namespace copnum;

TEST(NamedGraph, Petersen) {
  const Graph g = named_graph("petersen");
  EXPECT_EQ(g.order(), 10u);
  EXPECT_TRUE(g.is_regular());
  EXPECT_EQ(g.max_degree(), 3u);
  EXPECT_EQ(verify::girth_by_cycles(g), 5u);
}

TEST(NamedGraph, McGee) {
  const Graph g = named_graph("mcgee");
  EXPECT_EQ(g.order(), 24u);
  EXPECT_TRUE(g.is_regular());
  EXPECT_EQ(g.max_degree(), 3u);
  EXPECT_EQ(verify::girth_by_cycles(g), 7u);
  EXPECT_TRUE(g.is_connected());
}

TEST(NamedGraph, Families) {
  EXPECT_EQ(girth(named_graph("cycle(3)")).girth, 3u);
  EXPECT_EQ(named_graph("cycle(3)"), named_graph("complete(3)"));
  EXPECT_EQ(named_graph("hypercube(4)").order(), 16u);
  EXPECT_EQ(named_graph("complete_bipartite(2,5)").size(), 10u);
  EXPECT_EQ(named_graph("path(1)").order(), 1u);
  const Graph heawood = named_graph("heawood");
  EXPECT_EQ(heawood.order(), 14u);
  EXPECT_EQ(verify::girth_by_cycles(heawood), 6u);
  const Graph tc = named_graph("tutte_coxeter");
  EXPECT_EQ(tc.order(), 30u);
  EXPECT_EQ(girth(tc).girth, 8u);
  const Graph tree = named_graph("random_tree(30,5)");
  EXPECT_EQ(tree.size(), 29u);
  EXPECT_TRUE(tree.is_connected());
  EXPECT_EQ(tree, named_graph("random_tree(30,5)"));
}

TEST(NamedGraph, UnknownOrMalformed) {
  EXPECT_THROW((void)named_graph("dodecahedron"), PreconditionError);
  EXPECT_THROW((void)named_graph("cycle(2)"), PreconditionError);
  EXPECT_THROW((void)named_graph("cycle(x)"), PreconditionError);
}

TEST(Lps, X513) {
  const auto lps = lps_graph({5, 13});
  const auto& r = lps.record;
  EXPECT_EQ(r.legendre_p_over_q, -1);
  EXPECT_EQ(r.expected_n, 2184u);
  EXPECT_EQ(lps.graph.order(), 2184u);
  EXPECT_TRUE(lps.graph.is_regular());
  EXPECT_EQ(lps.graph.max_degree(), 6u);
  EXPECT_TRUE(r.connected);
  EXPECT_TRUE(r.bipartite);
  EXPECT_EQ(r.girth_floor, 6u);
  EXPECT_NEAR(r.girth_lower_bound, 4 * std::log(13.0) / std::log(5.0) - 1, 1e-12);
  ASSERT_TRUE(r.girth.has_value());
  EXPECT_GE(*r.girth, 6u);
  EXPECT_TRUE(r.verified());
}

TEST(Lps, PreconditionsRejected) {
  EXPECT_THROW((void)lps_graph({6, 13}), PreconditionError);   // p not prime
  EXPECT_THROW((void)lps_graph({5, 11}), PreconditionError);   // q != 1 mod 4
  EXPECT_THROW((void)lps_graph({5, 5}), PreconditionError);    // p == q
  EXPECT_THROW((void)lps_graph({13, 5}), PreconditionError);   // q <= 2 sqrt(p)
}

TEST(Arithmetic, PrimesAndLegendre) {
  EXPECT_TRUE(is_prime(2));
  EXPECT_TRUE(is_prime(13));
  EXPECT_FALSE(is_prime(1));
  EXPECT_FALSE(is_prime(91));
  EXPECT_EQ(legendre(5, 13), -1);
  EXPECT_EQ(legendre(3, 13), 1);
  EXPECT_EQ(legendre(13, 13), 0);
}

TEST(MooreBound, Values) {
  EXPECT_EQ(moore_bound(3, 5), 10u);
  EXPECT_EQ(moore_bound(3, 6), 14u);
  EXPECT_EQ(moore_bound(3, 7), 22u);
  EXPECT_EQ(moore_bound(3, 8), 30u);
  EXPECT_EQ(moore_bound(2, 8), 8u);
}

TEST(RandomRegular, BelowMooreBound) {
  try {
    (void)random_regular_girth(3, 4, 5, 1);
    FAIL() << "expected PreconditionError";
  } catch (const PreconditionError& e) {
    EXPECT_NE(std::string(e.what()).find("10"), std::string::npos);
  }
  EXPECT_THROW((void)random_regular_girth(3, 15, 3, 1), PreconditionError);  // d n odd
}

TEST(RandomRegular, CubicGirthSix) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Graph g = random_regular_girth(3, 14, 6, seed);
    EXPECT_EQ(g.order(), 14u);
    EXPECT_TRUE(g.is_regular());
    EXPECT_EQ(g.max_degree(), 3u);
    EXPECT_TRUE(g.is_connected());
    const auto gc = verify::girth_by_cycles(g);
    ASSERT_TRUE(gc.has_value());
    EXPECT_GE(*gc, 6u);
  }
}

TEST(RandomRegular, TwoRegularIsCycle) {
  const Graph g = random_regular_girth(2, 8, 8, 3);
  EXPECT_TRUE(g.is_connected());
  EXPECT_EQ(girth(g).girth, 8u);
  EXPECT_EQ(g.size(), 8u);
}

TEST(RandomRegular, DeterministicPerSeed) {
  EXPECT_EQ(random_regular_girth(3, 20, 5, 11), random_regular_girth(3, 20, 5, 11));
}

TEST(RandomRegular, GivesUp) {
  EXPECT_THROW((void)random_regular_girth(3, 22, 7, 1, 3), GenerationFailure);
}
