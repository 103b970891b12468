#include <gtest/gtest.h>

#include "secluded/generators.hpp"
#include "secluded/twin_cover.hpp"
#include "secluded/twins.hpp"

using namespace secluded;

TEST(Twins, CliqueIsOneTrueTwinModule) {
  auto p = twin_partition(complete_graph(5));
  ASSERT_EQ(p.size(), 1U);
  EXPECT_EQ(p.kinds[0], ModuleKind::Clique);
  EXPECT_EQ(p.modules[0].size(), 5U);
}

TEST(Twins, IndependentSideOfBipartite) {
  auto g = complete_bipartite_graph(2, 3);
  auto p = twin_partition(g);
  ASSERT_EQ(p.size(), 2U);
  for (auto kind : p.kinds) EXPECT_EQ(kind, ModuleKind::Independent);
  auto q = quotient(g, p);
  EXPECT_EQ(q.edge_count(), 1U);
}

TEST(Twins, PathHasNoTwinsBeyondEnds) {
  auto p = twin_partition(path_graph(5));
  EXPECT_EQ(p.size(), 5U);
}

TEST(Twins, PairPredicates) {
  auto g = complete_bipartite_graph(2, 2);
  EXPECT_TRUE(are_twins(g, 0, 1));
  EXPECT_FALSE(are_true_twins(g, 0, 1));
  auto k = complete_graph(3);
  EXPECT_TRUE(are_true_twins(k, 0, 1));
}

TEST(Twins, RandomPartitionsValidate) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    auto g = random_graph(9, 0.5, seed);
    auto p = twin_partition(g);
    EXPECT_NO_THROW(validate_twin_partition(g, p));
    for (std::size_t v = 0; v < g.n(); ++v) {
      for (std::size_t w = v + 1; w < g.n(); ++w) {
        bool same = p.module_of[v] == p.module_of[w];
        EXPECT_EQ(same, are_twins(g, static_cast<Vertex>(v), static_cast<Vertex>(w)));
      }
    }
  }
}

TEST(TwinCover, StarCenterCoversAll) {
  Graph star(5, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}, {0, 4, 1}}, 1, 4);
  auto d = twin_cover(star);
  EXPECT_EQ(d.cover, (VertexSet{0}));
  EXPECT_EQ(d.cliques.size(), 4U);
  auto cls = neighborhood_classes(star, d.cover);
  ASSERT_EQ(cls.size(), 1U);
  EXPECT_EQ(cls.cliques[0].size(), 4U);
}

TEST(TwinCover, CliqueNeedsNothing) {
  auto g = complete_graph(6);
  EXPECT_TRUE(minimum_twin_cover(g).empty());
  auto cls = neighborhood_classes(g, VertexSet{0, 5});
  ASSERT_EQ(cls.size(), 1U);
  ASSERT_EQ(cls.cliques[0].size(), 1U);
  EXPECT_EQ(cls.cliques[0][0].size(), 4U);
}

TEST(TwinCover, MinimumByBruteForce) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    auto g = random_graph(8, 0.35, seed);
    auto x = minimum_twin_cover(g);
    EXPECT_TRUE(is_twin_cover(g, x));
    std::size_t best = g.n();
    for (std::uint32_t mask = 0; mask < (1U << g.n()); ++mask) {
      VertexSet cand;
      for (std::size_t v = 0; v < g.n(); ++v) {
        if (mask >> v & 1U) cand.push_back(static_cast<Vertex>(v));
      }
      if (cand.size() < best && is_twin_cover(g, cand)) best = cand.size();
    }
    EXPECT_EQ(x.size(), best) << "seed " << seed;
  }
}

TEST(TwinCover, ComponentsOutsideAreCliquesWithSharedNeighborhoods) {
  for (std::uint64_t seed = 100; seed < 160; ++seed) {
    auto g = random_graph(10, 0.4, seed);
    auto x = minimum_twin_cover(g);
    auto cls = neighborhood_classes(g, x);
    for (std::size_t c = 0; c < cls.size(); ++c) {
      for (const auto& clique : cls.cliques[c]) {
        for (std::size_t i = 0; i < clique.size(); ++i) {
          for (std::size_t j = i + 1; j < clique.size(); ++j) EXPECT_TRUE(g.adjacent(clique[i], clique[j]));
        }
        for (auto v : clique) {
          VertexSet in_x;
          for (auto w : g.neighbors(v)) {
            if (std::binary_search(x.begin(), x.end(), w)) in_x.push_back(w);
          }
          EXPECT_EQ(in_x, cls.cover_neighbors[c]);
        }
      }
      for (std::size_t i = 1; i < cls.cliques[c].size(); ++i) {
        EXPECT_GE(cls.cliques[c][i - 1].size(), cls.cliques[c][i].size());
      }
    }
  }
}
