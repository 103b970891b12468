#include <gtest/gtest.h>

#include "secluded/expression.hpp"
#include "secluded/generators.hpp"

using namespace secluded;

namespace {

bool same_graph(const Graph& a, const Graph& b) {
  return a.n() == b.n() && a.s() == b.s() && a.t() == b.t() && to_text(a) == to_text(b);
}

}  // namespace

TEST(Expression, ParseSmallPath) {
  auto tree = parse_expression("labels 3\n(join 1 3 (union (join 2 1 (union (intro 0 2) (intro 1 1))) (intro 2 3)))");
  auto lg = eval_expression(tree);
  EXPECT_TRUE(same_graph(lg.graph, path_graph(3)));
  EXPECT_EQ(tree.s(), 0);
  EXPECT_EQ(tree.t(), 2);
  EXPECT_EQ(tree.count(ExprKind::Introduce), 3U);
}

TEST(Expression, TextRoundTrip) {
  auto tree = naive_expression(figure_one_graph());
  auto again = parse_expression(to_text(tree));
  EXPECT_EQ(to_text(again), to_text(tree));
  EXPECT_TRUE(same_graph(eval_expression(again).graph, figure_one_graph()));
}

TEST(Expression, ValidationErrors) {
  EXPECT_THROW(parse_expression("labels 3\n(intro 0 2)"), InputError);
  EXPECT_THROW(parse_expression("labels 3\n(union (intro 0 2) (intro 1 4))"), InputError);
  EXPECT_THROW(parse_expression("labels 3\n(union (intro 0 2) (intro 0 3))"), InputError);
  EXPECT_THROW(parse_expression("labels 3\n(union (intro 0 2) (intro 2 3))"), InputError);
  EXPECT_THROW(parse_expression("labels 3\n(join 1 1 (union (intro 0 2) (intro 1 3)))"), InputError);
  EXPECT_THROW(parse_expression("labels 3\n(relabel 2 1 (union (intro 0 2) (intro 1 3)))"), InputError);
  EXPECT_THROW(parse_expression("labels 3\n(union (intro 0 2) (intro 1 3)"), InputError);
  EXPECT_THROW(parse_expression("labels 3\n(merge (intro 0 2) (intro 1 3))"), InputError);
  EXPECT_THROW(parse_expression("(union (intro 0 2) (intro 1 3))"), InputError);
  EXPECT_THROW(parse_expression("labels 3\n(union (intro 0 2) (intro 1 2))"), InputError);
  EXPECT_THROW(parse_expression("labels 3\n(union (intro 0 2) (intro 1 3)) (intro 2 1)"), InputError);
}

TEST(Expression, Builders) {
  EXPECT_TRUE(same_graph(eval_expression(clique_expression(3)).graph, complete_graph(3)));
  auto k5 = clique_expression(5);
  EXPECT_LE(k5.labels(), 6);
  EXPECT_TRUE(same_graph(eval_expression(k5).graph, complete_graph(5)));
  EXPECT_TRUE(same_graph(eval_expression(path_expression(6)).graph, path_graph(6)));
  EXPECT_TRUE(same_graph(eval_expression(complete_bipartite_expression(2, 3)).graph.with_terminals(0, 4),
                         complete_bipartite_graph(2, 3)));
}

TEST(Expression, CographFormula) {
  auto tree = cograph_expression("(j v (u v v) v)");
  auto g = eval_expression(tree).graph;
  EXPECT_EQ(g.n(), 4U);
  EXPECT_EQ(g.m(), 5U);
  EXPECT_FALSE(g.adjacent(1, 2));
  EXPECT_TRUE(g.adjacent(0, 3));
  EXPECT_THROW(cograph_expression("(j v)"), InputError);
  EXPECT_THROW(cograph_expression("(x v v)"), InputError);
}

TEST(Expression, NaiveRoundTripsRandomGraphs) {
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    auto n = 2 + seed % 7;
    auto g = random_graph(n, 0.5, seed);
    auto tree = naive_expression(g);
    EXPECT_TRUE(is_irredundant(tree));
    EXPECT_TRUE(same_graph(eval_expression(tree).graph, g)) << "seed " << seed;
    EXPECT_EQ(tree.labels(), static_cast<Label>(n));
  }
}

TEST(Expression, IrredundantDropsDuplicateJoins) {
  auto tree = parse_expression(
      "labels 3\n(join 1 3 (join 1 3 (union (join 2 1 (union (intro 0 2) (intro 1 1))) (intro 2 3))))");
  EXPECT_FALSE(is_irredundant(tree));
  auto fixed = make_irredundant(tree);
  EXPECT_TRUE(is_irredundant(fixed));
  EXPECT_EQ(fixed.count(ExprKind::Join), 2U);
  EXPECT_TRUE(same_graph(eval_expression(fixed).graph, eval_expression(tree).graph));
}

TEST(Expression, PartialOverlapIsRejected) {
  // join(1,3) first links only vertex 1 to t; the outer join re-adds that
  // edge together with a new one from vertex 3.
  auto tree = parse_expression(
      "labels 3\n(join 1 3 (union (join 1 3 (union (intro 1 1) (intro 2 3))) (union (intro 0 2) (intro 3 1))))");
  EXPECT_THROW(make_irredundant(tree), InvariantError);
  EXPECT_FALSE(is_irredundant(tree));
}

TEST(Expression, DeepTreeWritesIteratively) {
  auto tree = path_expression(3000);
  auto text = to_text(tree);
  EXPECT_GT(text.size(), 3000U);
}
