#include <gtest/gtest.h>

#include "secluded/generators.hpp"
#include "secluded/nd.hpp"
#include "secluded/oracle.hpp"

using namespace secluded;

namespace {

std::vector<std::size_t> all_modules(const NdInstance& inst) {
  std::vector<std::size_t> out(inst.modules());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = i;
  return out;
}

}  // namespace

TEST(NdPrepare, TerminalsAreSingletonModules) {
  auto inst = prepare(complete_graph(5));
  EXPECT_EQ(inst.modules(), 3U);
  EXPECT_EQ(inst.partition.modules[inst.ms], (VertexSet{0}));
  EXPECT_EQ(inst.partition.modules[inst.mt], (VertexSet{4}));
}

TEST(NdIlp, HamiltonianInClique) {
  auto inst = prepare(complete_graph(5));
  auto subset = all_modules(inst);
  EXPECT_TRUE(nd_kpath(inst, subset, 5));
  EXPECT_TRUE(nd_kpath(inst, subset, 3));
  EXPECT_FALSE(nd_kpath(inst, subset, 6));
  auto p = build_ilp(inst, subset, 5);
  auto value = feasible(p.ilp);
  ASSERT_TRUE(value.has_value());
  auto w = reconstruct_path(inst, p, *value);
  EXPECT_EQ(w.length(), 5U);
  EXPECT_EQ(w.neighbor_count, 0U);
}

TEST(NdIlp, IndependentModuleNeedsAlternation) {
  // K_{2,3} with s, t on the small side: paths alternate sides.
  auto g = complete_bipartite_graph(2, 3).with_terminals(0, 1);
  auto inst = prepare(g);
  auto subset = all_modules(inst);
  EXPECT_TRUE(nd_kpath(inst, subset, 3));
  EXPECT_FALSE(nd_kpath(inst, subset, 4));
}

TEST(NdIlp, DumpListsCuts) {
  auto inst = prepare(path_graph(4));
  auto p = build_ilp(inst, all_modules(inst), 4);
  auto text = p.ilp.dump();
  EXPECT_NE(text.find(">= 1"), std::string::npos);
  EXPECT_EQ(p.y_var.size(), 4U);
  EXPECT_EQ(p.arcs.size(), 6U);
}

TEST(NdSolver, FigureOne) {
  NdSolver nd(figure_one_graph(), {24, true});
  EXPECT_TRUE(nd.exact(5, 5));
  EXPECT_TRUE(nd.exact(5, 4));
  EXPECT_FALSE(nd.length_exact(4, 5));
  auto w = nd.find(5, 4, true);
  ASSERT_TRUE(w.has_value());
  EXPECT_NO_THROW(validate_witness(figure_one_graph(), *w));
}

TEST(NdSolver, RandomAgainstOracle) {
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    auto n = 3 + seed % 6;
    auto m = n - 1 + seed % (n * (n - 1) / 2 - n + 2);
    auto g = random_connected(n, m, seed);
    NdSolver nd(g, {16, true});
    auto bf = bf_profile(g);
    ASSERT_EQ(nd.profile(), bf) << to_text(g);
    for (std::size_t k = 2; k <= n; ++k) {
      for (std::size_t l = 0; l <= n; ++l) {
        ASSERT_EQ(nd.length_exact(k, l), bf.length_exact(k, l));
        ASSERT_EQ(nd_short_secluded(g, k, l), bf.at_most(k, l));
        auto w = nd.find(k, l, true);
        ASSERT_EQ(w.has_value(), bf.exact(k, l));
        if (w) {
          EXPECT_EQ(w->length(), k);
          EXPECT_EQ(w->neighbor_count, l);
        }
      }
    }
  }
}

TEST(NdSolver, ModuleCap) {
  EXPECT_THROW(NdSolver(path_graph(10), {8, false}), BudgetError);
  EXPECT_NO_THROW(NdSolver(complete_graph(30), {4, false}));
}

TEST(NdSolver, RejectsTinyK) {
  NdSolver nd(path_graph(3));
  EXPECT_THROW(nd.find(1, 0, true), InputError);
}
