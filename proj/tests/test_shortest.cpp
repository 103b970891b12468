#include <gtest/gtest.h>

#include "secluded/generators.hpp"
#include "secluded/oracle.hpp"
#include "secluded/shortest.hpp"

using namespace secluded;

TEST(Layering, PathGraph) {
  auto lay = layering(path_graph(5));
  ASSERT_TRUE(lay.has_value());
  EXPECT_EQ(lay->k, 4U);
  EXPECT_EQ(lay->layers[2], (VertexSet{2}));
  EXPECT_TRUE(lay->rest.empty());
}

TEST(Layering, DisconnectedHasNone) {
  Graph g(4, {{0, 1, 1}, {2, 3, 1}}, 0, 3);
  EXPECT_FALSE(layering(g).has_value());
  EXPECT_FALSE(shortest_secluded(g).has_value());
}

TEST(Layering, LemmasHoldOnRandomGraphs) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    auto g = random_graph(4 + seed % 9, 0.3, seed);
    auto lay = layering(g);
    if (!lay) continue;
    auto bad = layer_lemma_violations(g, *lay);
    EXPECT_TRUE(bad.empty()) << bad.front();
  }
}

TEST(Layering, ViolationsAreReported) {
  auto g = path_graph(4);
  auto lay = *layering(g);
  lay.layer_of[2] = 3;
  EXPECT_FALSE(layer_lemma_violations(g, lay).empty());
}

TEST(Shortest, PathHasNoNeighbors) {
  auto w = shortest_secluded(path_graph(4));
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->neighbor_count, 0U);
  EXPECT_EQ(w->length(), 4U);
}

TEST(Shortest, FigureOnePrefersDetour) {
  auto w = shortest_secluded(figure_one_graph());
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->length(), 5U);
  EXPECT_EQ(w->neighbor_count, 4U);
}

TEST(Shortest, AdjacentTerminals) {
  auto w = shortest_secluded(complete_graph(5));
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->vertices, (std::vector<Vertex>{0, 4}));
  EXPECT_EQ(w->neighbor_count, 3U);
}

TEST(Shortest, MatchesOracle) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    auto n = 2 + seed % 11;
    auto g = random_graph(n, 0.25 + 0.05 * static_cast<double>(seed % 8), seed);
    auto bf = bf_shortest_secluded(g);
    auto dp = shortest_secluded(g);
    ASSERT_EQ(bf.has_value(), dp.has_value()) << to_text(g);
    if (!bf) continue;
    EXPECT_EQ(dp->length(), bf->length()) << to_text(g);
    EXPECT_EQ(dp->neighbor_count, bf->neighbor_count) << to_text(g);
  }
}

TEST(Shortest, DpValuesAreWitnessed) {
  auto g = grid_graph(3, 4);
  ShortestSecludedDp dp(g, *layering(g));
  auto w = dp.best();
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->length(), 6U);
  EXPECT_EQ(static_cast<std::size_t>(dp.value(w->vertices[4], w->vertices[5])), w->neighbor_count);
}

TEST(Shortest, RejectsWeighted) {
  Graph g(2, {{0, 1, 3}}, 0, 1, true);
  EXPECT_THROW(shortest_secluded(g), InputError);
}
