#include <gtest/gtest.h>

#include "secluded/generators.hpp"
#include "secluded/weighted.hpp"

using namespace secluded;

namespace {

McInstance c4_instance() {
  Graph g(4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {0, 3, 1}}, 0, 3);
  return {g, {{0, 2}, {1, 3}}, 2};
}

McInstance c6_instance() {
  std::vector<Edge> edges;
  for (Vertex v = 0; v < 6; ++v) edges.push_back({v, static_cast<Vertex>((v + 1) % 6), 1});
  return {Graph(6, edges, 0, 5), {{0, 3}, {1, 4}, {2, 5}}, 2};
}

}  // namespace

TEST(Random, Deterministic) {
  EXPECT_EQ(to_text(random_graph(10, 0.4, 7)), to_text(random_graph(10, 0.4, 7)));
  EXPECT_NE(to_text(random_graph(10, 0.4, 7)), to_text(random_graph(10, 0.4, 8)));
  EXPECT_EQ(to_text(random_connected(9, 14, 3)), to_text(random_connected(9, 14, 3)));
  EXPECT_EQ(to_text(random_mc(3, 3, 2, 5)), to_text(random_mc(3, 3, 2, 5)));
}

TEST(Random, SingleVertexHasNoEdges) { EXPECT_EQ(random_graph(1, 1.0, 1).m(), 0U); }

TEST(Random, ConnectedHasRequestedEdges) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto g = random_connected(8, 7 + seed % 21, seed);
    EXPECT_EQ(g.m(), 7 + seed % 21);
    auto d = bfs_layers(g, 0);
    for (auto x : d) EXPECT_NE(x, kInfinity);
  }
  EXPECT_THROW(random_connected(5, 3, 1), InputError);
  EXPECT_THROW(random_connected(5, 11, 1), InputError);
}

TEST(Random, MulticoloredRegular) {
  auto mc = random_mc(2, 2, 2, 9);
  EXPECT_NO_THROW(validate_mc(mc));
  EXPECT_EQ(mc.graph.m(), 4U);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto big = random_mc(3, 4, 3, seed);
    EXPECT_NO_THROW(validate_mc(big));
    for (std::size_t v = 0; v < big.graph.n(); ++v) EXPECT_EQ(big.graph.degree(static_cast<Vertex>(v)), 3U);
  }
  EXPECT_THROW(random_mc(2, 2, 3, 1), InputError);
  EXPECT_THROW(random_mc(3, 1, 1, 1), InputError);
}

TEST(McText, RoundTrip) {
  auto mc = random_mc(3, 3, 2, 4);
  auto back = parse_mc(to_text(mc));
  EXPECT_EQ(to_text(back), to_text(mc));
  EXPECT_EQ(back.r, mc.r);
  EXPECT_THROW(parse_mc("p 2 1\ne 0 1\npart 1 0 1\n"), InputError);
}

TEST(McValidate, RejectsBadInstances) {
  auto mc = c4_instance();
  mc.parts = {{0, 1}, {2, 3}};
  EXPECT_THROW(validate_mc(mc), InputError);
  auto irregular = c4_instance();
  irregular.r = 3;
  EXPECT_THROW(validate_mc(irregular), InputError);
}

TEST(Reduction, CycleOfFour) {
  auto red = reduce_mc(c4_instance());
  EXPECT_EQ(red.graph.n(), 11U);
  EXPECT_EQ(red.threshold, 5U);
  EXPECT_EQ(red.d, 4);
  EXPECT_EQ(dijkstra(red.graph, red.graph.s())[static_cast<std::size_t>(red.graph.t())], 4);
  auto w = weighted_shortest_secluded(red.graph);
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->neighbor_count, 5U);
  EXPECT_TRUE(has_multicolored_clique(c4_instance()));
}

TEST(Reduction, TriangleFreeIsNo) {
  auto mc = c6_instance();
  EXPECT_FALSE(has_multicolored_clique(mc));
  auto red = reduce_mc(mc);
  auto w = weighted_shortest_secluded(red.graph);
  ASSERT_TRUE(w.has_value());
  EXPECT_GT(w->neighbor_count, red.threshold);
}

TEST(Reduction, SoundOnRandomInstances) {
  std::size_t yes = 0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    auto mc = random_mc(3, 3, 2 + 2 * (seed % 2), seed);
    auto red = reduce_mc(mc);
    EXPECT_EQ(dijkstra(red.graph, red.graph.s())[static_cast<std::size_t>(red.graph.t())], red.d);
    auto w = weighted_shortest_secluded(red.graph);
    ASSERT_TRUE(w.has_value());
    bool clique = has_multicolored_clique(mc);
    yes += clique ? 1 : 0;
    EXPECT_EQ(clique, w->neighbor_count <= red.threshold) << "seed " << seed;
  }
  EXPECT_GT(yes, 0U);
}

TEST(Named, Shapes) {
  EXPECT_EQ(complete_graph(5).m(), 10U);
  EXPECT_EQ(cycle_graph(6).t(), 3);
  EXPECT_EQ(star_graph(5).s(), 1);
  EXPECT_EQ(grid_graph(3, 3).m(), 12U);
  EXPECT_EQ(complete_bipartite_graph(2, 3).m(), 6U);
  auto fig = figure_one_graph();
  EXPECT_EQ(fig.n(), 12U);
  EXPECT_EQ(fig.m(), 15U);
}
