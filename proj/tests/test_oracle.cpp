#include <gtest/gtest.h>

#include "secluded/generators.hpp"
#include "secluded/oracle.hpp"

using namespace secluded;

TEST(Oracle, WitnessCountsNeighbors) {
  auto g = figure_one_graph();
  auto w = make_witness(g, {0, 1, 2, 3, 4});
  EXPECT_EQ(w.length(), 5U);
  EXPECT_EQ(w.neighbor_count, 5U);
  EXPECT_NO_THROW(validate_witness(g, w));
  w.neighbor_count = 4;
  EXPECT_THROW(validate_witness(g, w), InternalError);
}

TEST(Oracle, FigureOneCells) {
  auto g = figure_one_graph();
  EXPECT_TRUE(bf_secluded_kpath(g, 5, 5, true));
  EXPECT_FALSE(bf_secluded_kpath(g, 4, 5, false));
  // The path through 5, 10 and 7 also has five vertices but only four
  // neighbors.
  auto w = make_witness(g, {0, 5, 10, 7, 4});
  EXPECT_NO_THROW(validate_witness(g, w));
  EXPECT_EQ(w.neighbor_count, 4U);
  EXPECT_TRUE(bf_secluded_kpath(g, 5, 4, false));
  EXPECT_FALSE(bf_secluded_kpath(g, 5, 3, false));
}

TEST(Oracle, EnumeratesAllPathsOfK4) {
  auto paths = collect_st_paths(complete_graph(4), 4);
  // Direct edge, two of length 3, two of length 4.
  EXPECT_EQ(paths.size(), 5U);
  EXPECT_EQ(paths.front().vertices, (std::vector<Vertex>{0, 1, 2, 3}));
}

TEST(Oracle, HamiltonianCases) {
  EXPECT_TRUE(bf_secluded_kpath(complete_graph(6), 6, 0, true));
  EXPECT_FALSE(bf_secluded_kpath(star_graph(5), 5, 0, true));
  EXPECT_TRUE(bf_secluded_kpath(path_graph(7), 7, 0, true));
  EXPECT_TRUE(bf_secluded_kpath(grid_graph(3, 3), 9, 0, true));
  EXPECT_TRUE(bf_secluded_kpath(grid_graph(2, 3), 6, 0, true));
  EXPECT_FALSE(bf_secluded_kpath(grid_graph(2, 2), 4, 0, true));
}

TEST(Oracle, ShortVariantIsMonotone) {
  auto g = random_connected(8, 12, 3);
  for (std::size_t k = 2; k <= 8; ++k) {
    for (std::size_t l = 0; l < 8; ++l) {
      if (bf_short_secluded(g, k, l)) {
        EXPECT_TRUE(bf_short_secluded(g, k + 1, l));
        EXPECT_TRUE(bf_short_secluded(g, k, l + 1));
      }
    }
  }
}

TEST(Oracle, ProfileMatchesDirectQueries) {
  auto g = random_connected(7, 10, 11);
  auto table = bf_profile(g);
  for (std::size_t k = 2; k <= 7; ++k) {
    for (std::size_t l = 0; l <= 7; ++l) {
      EXPECT_EQ(table.length_exact(k, l), bf_secluded_kpath(g, k, l, false));
      EXPECT_EQ(table.exact(k, l), bf_secluded_kpath(g, k, l, true));
      EXPECT_EQ(table.at_most(k, l), bf_short_secluded(g, k, l));
    }
  }
}

TEST(Oracle, ShortestPrefersFewerNeighbors) {
  auto g = figure_one_graph();
  auto w = bf_shortest_secluded(g);
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->length(), 5U);
  EXPECT_EQ(w->neighbor_count, 4U);
  Graph split(4, {{0, 1, 1}}, 0, 3);
  EXPECT_FALSE(bf_shortest_secluded(split).has_value());
}

TEST(Oracle, BudgetIsEnforced) {
  EXPECT_THROW(bf_profile(complete_graph(9), 100), BudgetError);
}

TEST(Oracle, RejectsTinyK) {
  EXPECT_THROW(bf_secluded_kpath(path_graph(3), 1, 0, true), InputError);
}
