#include <gtest/gtest.h>

#include <sstream>

#include "secluded/ilp.hpp"

using namespace secluded;

TEST(Ilp, FindsLexicographicallyFirstSolution) {
  IlpInstance inst;
  auto a = inst.add_variable("a", 0, 5);
  auto b = inst.add_variable("b", 0, 5);
  inst.add_constraint({{a, 1}, {b, 1}}, Relation::Equal, 4);
  inst.add_constraint({{a, 1}, {b, -1}}, Relation::GreaterEqual, 1);
  auto sol = feasible(inst);
  ASSERT_TRUE(sol.has_value());
  EXPECT_EQ(*sol, (std::vector<std::int64_t>{3, 1}));
}

TEST(Ilp, DetectsParityInfeasibility) {
  IlpInstance inst;
  auto a = inst.add_variable("a", 0, 10);
  auto b = inst.add_variable("b", 0, 10);
  inst.add_constraint({{a, 2}, {b, 2}}, Relation::Equal, 7);
  IlpStats stats;
  EXPECT_FALSE(feasible(inst, &stats).has_value());
}

TEST(Ilp, EmptyDomainRejected) {
  IlpInstance inst;
  EXPECT_THROW(inst.add_variable("a", 2, 1), InputError);
  EXPECT_THROW(inst.add_constraint({{3, 1}}, Relation::LessEqual, 0), InputError);
}

TEST(Ilp, InfeasibleAndBudget) {
  IlpInstance inst;
  std::vector<LinearTerm> all;
  for (int i = 0; i < 12; ++i) all.push_back({inst.add_variable("v" + std::to_string(i), 0, 1), 2});
  inst.add_constraint(all, Relation::Equal, 11);
  EXPECT_FALSE(feasible(inst).has_value());
  std::vector<LinearTerm> pairs;
  IlpInstance hard;
  for (int i = 0; i < 20; ++i) pairs.push_back({hard.add_variable("v" + std::to_string(i), 0, 1), 1 + i % 3});
  hard.add_constraint(pairs, Relation::Equal, 1000);
  hard.add_constraint(pairs, Relation::LessEqual, 1000);
  EXPECT_FALSE(feasible(hard).has_value());
  IlpInstance slow;
  std::vector<LinearTerm> mix;
  for (int i = 0; i < 24; ++i) mix.push_back({slow.add_variable("v" + std::to_string(i), 0, 1), i % 2 ? 3 : 5});
  slow.add_constraint(mix, Relation::Equal, 47);
  std::vector<LinearTerm> odd;
  for (int i = 0; i < 24; ++i) odd.push_back({static_cast<std::size_t>(i), 1});
  slow.add_constraint(odd, Relation::Equal, 12);
  EXPECT_THROW(feasible(slow, nullptr, 5), BudgetError);
}

TEST(Ilp, MatchesEnumeration) {
  for (int seed = 0; seed < 200; ++seed) {
    IlpInstance inst;
    std::uint64_t x = static_cast<std::uint64_t>(seed) * 6364136223846793005ULL + 1442695040888963407ULL;
    auto next = [&](int mod) {
      x = x * 6364136223846793005ULL + 1442695040888963407ULL;
      return static_cast<int>((x >> 33) % static_cast<std::uint64_t>(mod));
    };
    for (int v = 0; v < 3; ++v) inst.add_variable("v" + std::to_string(v), 0, 3);
    for (int c = 0; c < 3; ++c) {
      std::vector<LinearTerm> terms;
      for (std::size_t v = 0; v < 3; ++v) terms.push_back({v, next(7) - 3});
      inst.add_constraint(terms, static_cast<Relation>(next(3)), next(9) - 4);
    }
    bool any = false;
    std::vector<std::int64_t> first;
    for (int a = 0; a <= 3 && !any; ++a) {
      for (int b = 0; b <= 3 && !any; ++b) {
        for (int c = 0; c <= 3 && !any; ++c) {
          std::vector<std::int64_t> cand{a, b, c};
          if (inst.satisfied(cand)) {
            any = true;
            first = cand;
          }
        }
      }
    }
    auto sol = feasible(inst);
    ASSERT_EQ(sol.has_value(), any) << "seed " << seed;
    if (any) {
      EXPECT_EQ(*sol, first) << "seed " << seed;
    }
  }
}

TEST(Ilp, DumpFormat) {
  IlpInstance inst;
  auto a = inst.add_variable("a", 0, 2);
  auto b = inst.add_variable("b", 1, 3);
  inst.add_constraint({{a, 2}, {b, -1}}, Relation::LessEqual, 4);
  std::ostringstream out;
  inst.dump(out);
  EXPECT_NE(out.str().find("2*a - 1*b <= 4"), std::string::npos) << out.str();
}
