#include <gtest/gtest.h>

#include <algorithm>

#include "copnum/error.hpp"
#include "copnum/generators.hpp"
#include "copnum/graph.hpp"
#include "copnum/graph_io.hpp"
#include "copnum/random.hpp"
#include "copnum/verify/oracles.hpp"

using namespace copnum;

namespace {

Graph random_graph(std::size_t n, double p, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Edge> edges;
  for (Vertex a = 0; a < n; ++a) {
    for (Vertex b = a + 1; b < n; ++b) {
      if (uniform01(rng) < p) edges.push_back({a, b});
    }
  }
  return Graph::from_edges(n, edges);
}

}  // namespace

TEST(LoadGraph, PathFromEdgeList) {
  const Graph g = load_graph("0 1\n1 2");
  EXPECT_EQ(g.order(), 3u);
  EXPECT_EQ(g.size(), 2u);
  EXPECT_EQ(g.min_degree(), 1u);
  EXPECT_EQ(g.max_degree(), 2u);
}

TEST(LoadGraph, DuplicateEdgeMerged) {
  const Graph g = load_graph("0 1\n1 0");
  EXPECT_EQ(g.order(), 2u);
  EXPECT_EQ(g.size(), 1u);
}

TEST(LoadGraph, SelfLoopReportsLine) {
  try {
    (void)load_graph("0 0");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1u);
    EXPECT_NE(std::string(e.what()).find("self-loop"), std::string::npos);
  }
  EXPECT_THROW((void)load_graph("0 1\n2 2\n"), ParseError);
}

TEST(LoadGraph, CommentsBlankLinesAndJson) {
  const Graph a = load_graph("# header\n\n0 1  # edge\n1 2\n");
  const Graph b = load_graph(R"({"n": 3, "edges": [[0, 1], [2, 1]]})");
  EXPECT_EQ(a, b);
  EXPECT_THROW((void)load_graph("0 x"), ParseError);
  EXPECT_THROW((void)load_graph(R"({"n": 2, "edges": [[0, 5]]})"), ParseError);
}

TEST(LoadGraph, RoundTrip) {
  const Graph g = named_graph("petersen");
  EXPECT_EQ(load_graph(to_edge_list(g)), g);
  EXPECT_EQ(load_graph(to_graph_json(g)), g);
}

TEST(Distances, Path) {
  const Graph g = load_graph("0 1\n1 2");
  EXPECT_EQ(distances(g, 0), (std::vector<std::uint32_t>{0, 1, 2}));
}

TEST(Distances, PetersenDiameterTwo) {
  const Graph g = named_graph("petersen");
  for (Vertex v = 0; v < g.order(); ++v) {
    const auto d = distances(g, v);
    EXPECT_EQ(std::count(d.begin(), d.end(), 2u), 6);
    EXPECT_EQ(std::count(d.begin(), d.end(), 1u), 3);
    EXPECT_EQ(*std::max_element(d.begin(), d.end()), 2u);
  }
}

TEST(Distances, Unreachable) {
  const Graph g = load_graph("0 1\n2 3");
  EXPECT_EQ(distances(g, 0), (std::vector<std::uint32_t>{0, 1, kInfinity, kInfinity}));
  EXPECT_EQ(format_distance(kInfinity), "inf");
  EXPECT_FALSE(g.is_connected());
}

TEST(Distances, MatchFloydWarshall) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Graph g = random_graph(14, 0.18, seed);
    const auto table = verify::all_pairs_distances(g);
    for (Vertex v = 0; v < g.order(); ++v) EXPECT_EQ(distances(g, v), table[v]);
  }
}

TEST(Distances, OutOfRangeVertexThrows) {
  const Graph g = load_graph("0 1");
  EXPECT_THROW((void)distances(g, 5), PreconditionError);
}

TEST(Ball, Radii) {
  const Graph g = named_graph("petersen");
  EXPECT_EQ(ball(g, 3, 0), (std::vector<Vertex>{3}));
  EXPECT_EQ(ball(g, 3, 1).size(), 4u);
  EXPECT_EQ(ball(g, 3, 2).size(), 10u);
}

TEST(Ball, MonotoneInRadius) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Graph g = random_graph(20, 0.12, seed);
    for (Vertex v = 0; v < g.order(); v += 3) {
      std::vector<Vertex> prev;
      for (std::uint32_t r = 0; r <= 6; ++r) {
        const auto b = ball(g, v, r);
        EXPECT_TRUE(std::includes(b.begin(), b.end(), prev.begin(), prev.end()));
        const auto s = sphere(g, v, r);
        EXPECT_EQ(b.size(), prev.size() + s.size());
        prev = b;
      }
    }
  }
}

TEST(Girth, Examples) {
  EXPECT_EQ(girth(named_graph("cycle(5)")).girth, 5u);
  EXPECT_EQ(girth(named_graph("cycle(3)")).girth, 3u);
  const auto mcgee = girth(named_graph("mcgee"));
  EXPECT_EQ(mcgee.girth, 7u);
  EXPECT_EQ(mcgee.t, 1u);
  EXPECT_EQ(mcgee.r, 0u);
  const auto tree = girth(named_graph("random_tree(12,4)"));
  EXPECT_FALSE(tree.girth.has_value());
  EXPECT_TRUE(tree.acyclic());
  EXPECT_EQ(girth(named_graph("heawood")).girth, 6u);
  EXPECT_EQ(girth(named_graph("tutte_coxeter")).girth, 8u);
}

TEST(Girth, Decomposition) {
  const auto d = decompose_girth(12u);  // 12 = 4*2 + 3 + 1
  EXPECT_EQ(d.t, 2u);
  EXPECT_EQ(d.r, 1u);
  EXPECT_EQ(decompose_girth(10u).t, 1u);
  EXPECT_EQ(decompose_girth(10u).r, 3u);
  EXPECT_EQ(decompose_girth(5u).t, 0u);
  EXPECT_FALSE(decompose_girth(5u).theorem1_applicable());
  EXPECT_TRUE(decompose_girth(std::nullopt).theorem1_applicable());
}

TEST(Girth, MatchesCycleEnumeration) {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const Graph g = random_graph(12, 0.1 + 0.005 * static_cast<double>(seed), seed);
    EXPECT_EQ(girth(g).girth, verify::girth_by_cycles(g)) << "seed " << seed;
  }
}

TEST(Paths, ShortestPathIsGeodesic) {
  const Graph g = named_graph("mcgee");
  for (Vertex b = 0; b < g.order(); ++b) {
    const auto p = shortest_path(g, 0, b);
    ASSERT_FALSE(p.empty());
    EXPECT_EQ(p.front(), 0u);
    EXPECT_EQ(p.back(), b);
    EXPECT_EQ(p.size() - 1, distances(g, 0)[b]);
    EXPECT_TRUE(is_geodesic(g, p));
  }
  const Graph c6 = named_graph("cycle(6)");
  EXPECT_FALSE(is_geodesic(c6, std::vector<Vertex>{0, 1, 2, 3, 4}));
}

TEST(FrontierSet, McGeeAllAdjacentPairs) {
  const Graph g = named_graph("mcgee");
  const auto table = verify::all_pairs_distances(g);
  for (Vertex v = 0; v < g.order(); ++v) {
    for (Vertex u : g.neighbors(v)) {
      const auto cert = lemma2_set(g, v, u);
      EXPECT_EQ(cert.bound, 4u);
      EXPECT_TRUE(cert.satisfied());
      EXPECT_EQ(cert.set, verify::lemma2_set_by_table(table, v, u, 1));
    }
  }
}

TEST(FrontierSet, TruncatedCubicTree) {
  // 3-regular tree to depth 3 around vertex 0: 1 + 3 + 6 + 12 vertices.
  std::vector<Edge> edges;
  Vertex next = 1;
  std::vector<Vertex> layer{0};
  for (int depth = 0; depth < 3; ++depth) {
    std::vector<Vertex> out;
    for (Vertex x : layer) {
      for (int c = 0; c < (depth == 0 ? 3 : 2); ++c) {
        edges.push_back({x, next});
        out.push_back(next++);
      }
    }
    layer = out;
  }
  const Graph g = Graph::from_edges(next, edges);
  ASSERT_FALSE(girth(g).girth.has_value());
  const auto cert = lemma2_set(g, 0, 1, 1);
  // U keeps u's two children and four grandchildren: 6 >= (3 - 1)^2.
  EXPECT_EQ(cert.set, (std::vector<Vertex>{4, 5, 10, 11, 12, 13}));
  // Leaves make the minimum degree 1, so the generic bound is 0 here.
  EXPECT_EQ(cert.bound, 0u);
}

TEST(FrontierSet, SingleFrontierNeighborKeepsWholeBall) {
  // Spider with one leg: v = 0 has the single neighbor u = 1.
  const Graph g = load_graph("0 1\n1 2\n2 3\n1 4\n4 5");
  const auto cert = lemma2_set(g, 0, 1, 1);
  EXPECT_EQ(cert.set, ball(g, 1, 2));
}

TEST(FrontierSet, RequiresDistanceT) {
  const Graph g = named_graph("mcgee");
  const auto d = distances(g, 0);
  const auto far = static_cast<Vertex>(std::find(d.begin(), d.end(), 3u) - d.begin());
  EXPECT_THROW((void)lemma2_set(g, 0, far, 1), PreconditionError);
}

TEST(GraphInvariants, CachedStatsMatchAdjacency) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Graph g = random_graph(15, 0.3, seed);
    std::size_t lo = g.order(), hi = 0, arcs = 0;
    for (Vertex v = 0; v < g.order(); ++v) {
      const auto nb = g.neighbors(v);
      lo = std::min(lo, nb.size());
      hi = std::max(hi, nb.size());
      arcs += nb.size();
      EXPECT_TRUE(std::is_sorted(nb.begin(), nb.end()));
      for (Vertex w : nb) {
        EXPECT_NE(w, v);
        EXPECT_TRUE(g.adjacent(w, v));
      }
    }
    EXPECT_EQ(g.min_degree(), lo);
    EXPECT_EQ(g.max_degree(), hi);
    EXPECT_EQ(g.size() * 2, arcs);
  }
}
