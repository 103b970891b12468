#include <gtest/gtest.h>

#include "secluded/errors.hpp"
#include "secluded/generators.hpp"
#include "secluded/graph.hpp"

using namespace secluded;

TEST(Graph, BuildsSortedAdjacency) {
  Graph g(4, {{2, 0, 1}, {0, 1, 1}, {3, 2, 1}}, 0, 3);
  EXPECT_EQ(g.n(), 4U);
  EXPECT_EQ(g.m(), 3U);
  EXPECT_TRUE(g.adjacent(0, 2));
  EXPECT_TRUE(g.adjacent(2, 0));
  EXPECT_FALSE(g.adjacent(1, 3));
  auto nb = g.neighbors(0);
  EXPECT_EQ(VertexSet(nb.begin(), nb.end()), (VertexSet{1, 2}));
  EXPECT_EQ(g.edges().front().u, 0);
  EXPECT_EQ(g.edges().front().v, 1);
}

TEST(Graph, RejectsMalformedEdges) {
  EXPECT_THROW(Graph(3, {{0, 0, 1}}, 0, 2), InputError);
  EXPECT_THROW(Graph(3, {{0, 1, 1}, {1, 0, 1}}, 0, 2), InputError);
  EXPECT_THROW(Graph(3, {{0, 5, 1}}, 0, 2), InputError);
  EXPECT_THROW(Graph(3, {{0, 1, 2}}, 0, 2), InputError);
  EXPECT_THROW(Graph(3, {{0, 1, 0}}, 0, 2, true), InputError);
  EXPECT_THROW(Graph(3, {}, 1, 1), InputError);
  EXPECT_THROW(Graph(3, {}, 0, 3), InputError);
}

TEST(Graph, OpenNeighborhoodOfSet) {
  auto g = path_graph(5);
  VertexSet u{1, 2};
  EXPECT_EQ(neighborhood(g, u), (VertexSet{0, 3}));
  VertexSet all{0, 1, 2, 3, 4};
  EXPECT_TRUE(neighborhood(g, all).empty());
  EXPECT_EQ(neighborhood_size(g, VertexSet{0}), 1U);
}

TEST(Graph, BfsLayers) {
  auto g = cycle_graph(6);
  auto d = bfs_layers(g, 0);
  EXPECT_EQ(d, (std::vector<std::int64_t>{0, 1, 2, 3, 2, 1}));
  Graph split(4, {{0, 1, 1}}, 0, 3);
  EXPECT_EQ(bfs_layers(split, 0)[3], kInfinity);
}

TEST(Graph, SimplePathCheck) {
  auto g = path_graph(4);
  EXPECT_TRUE(is_simple_path(g, VertexSet{0, 1, 2, 3}));
  EXPECT_FALSE(is_simple_path(g, VertexSet{0, 2}));
  EXPECT_FALSE(is_simple_path(g, std::vector<Vertex>{0, 1, 0}));
}

TEST(Graph, InducedKeepsEdgesInside) {
  auto g = complete_graph(5);
  auto h = g.induced(VertexSet{0, 2, 4});
  EXPECT_EQ(h.n(), 3U);
  EXPECT_EQ(h.m(), 3U);
}

TEST(GraphText, RoundTrip) {
  auto g = figure_one_graph();
  auto back = parse_graph(to_text(g));
  EXPECT_EQ(to_text(back), to_text(g));
  EXPECT_EQ(back.s(), 0);
  EXPECT_EQ(back.t(), 4);
}

TEST(GraphText, WeightedRoundTrip) {
  Graph g(3, {{0, 1, 4}, {1, 2, 7}}, 0, 2, true);
  auto back = parse_graph(to_text(g));
  EXPECT_TRUE(back.weighted());
  EXPECT_EQ(back.weight(1, 2), 7);
}

TEST(GraphText, CommentsAndBlankLines) {
  auto g = parse_graph("# header\np 3 2\n\ne 0 1 # first\ne 1 2\ns 0\nt 2\n");
  EXPECT_EQ(g.m(), 2U);
}

TEST(GraphText, Errors) {
  EXPECT_THROW(parse_graph("e 0 1\np 2 1\ns 0\nt 1\n"), InputError);
  EXPECT_THROW(parse_graph("p 2 2\ne 0 1\ns 0\nt 1\n"), InputError);
  EXPECT_THROW(parse_graph("p 2 1\ne 0 1\ns 0\n"), InputError);
  EXPECT_THROW(parse_graph("p 2 1\ne 0 1\ns 0\nt 0\n"), InputError);
  EXPECT_THROW(parse_graph("p 3 2\ne 0 1\new 1 2 3\ns 0\nt 2\n"), InputError);
  EXPECT_THROW(parse_graph("p 2 1\ne 0 1 9\ns 0\nt 1\n"), InputError);
  EXPECT_THROW(parse_graph("p 2 1\nx 0 1\ns 0\nt 1\n"), InputError);
  EXPECT_THROW(parse_graph("p 2 1\ne 0 a\ns 0\nt 1\n"), InputError);
  EXPECT_THROW(parse_graph("p 2 1\new 0 1 0\ns 0\nt 1\n"), InputError);
}
