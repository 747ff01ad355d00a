#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "navfield/errors.hpp"
#include "navfield/path_search.hpp"
#include "oracles.hpp"

using namespace navfield;

TEST(PathCost, ExactOrdering) {
  EXPECT_LT((PathCost{1, 0}), (PathCost{0, 1}));   // 1 < 1.414
  EXPECT_GT((PathCost{2, 0}), (PathCost{0, 1}));   // 2 > 1.414
  EXPECT_LT((PathCost{0, 5}), (PathCost{8, 0}));   // 7.07 < 8
  EXPECT_GT((PathCost{0, 5}), (PathCost{7, 0}));
  EXPECT_LT((PathCost{3, 7}), (PathCost{13, 0}));  // 12.899 < 13
  EXPECT_EQ((PathCost{2, 3}), (PathCost{2, 3}));
}

TEST(PathCost, OrderingAgreesWithValue) {
  for (int a = 0; a < 25; ++a)
    for (int b = 0; b < 25; ++b)
      for (int c = 0; c < 25; ++c)
        for (int d = 0; d < 25; d += 3) {
          const PathCost x{a, b}, y{c, d};
          const double dx = a + b * std::sqrt(2.0), dy = c + d * std::sqrt(2.0);
          if (std::abs(dx - dy) < 1e-9) continue;
          EXPECT_EQ(x < y, dx < dy);
        }
}

TEST(Astar, StraightLine) {
  auto env = oracle::empty_env(10, 10);
  const auto p = astar(env, {0, 0}, {0, 5});
  EXPECT_EQ(p.cells.size(), 6u);
  EXPECT_DOUBLE_EQ(p.cost.value(), 5.0);
}

TEST(Astar, PureDiagonal) {
  auto env = oracle::empty_env(10, 10);
  const auto p = astar(env, {0, 0}, {5, 5});
  EXPECT_EQ(p.cells.size(), 6u);
  EXPECT_NEAR(p.cost.value(), 5 * std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(p.cost.value(), 7.0711, 1e-4);
}

TEST(Astar, StartEqualsGoal) {
  auto env = oracle::empty_env(4, 4);
  const auto p = astar(env, {2, 2}, {2, 2});
  EXPECT_EQ(p.cells, (std::vector<GridCoord>{{2, 2}}));
  EXPECT_EQ(p.cost, PathCost{});
}

TEST(Astar, Errors) {
  auto env = oracle::with_obstacles(5, 5, {{2, 0}, {2, 1}, {2, 2}, {2, 3}, {2, 4}});
  EXPECT_THROW(astar(env, {0, 0}, {4, 4}), NoPathError);
  EXPECT_THROW(astar(env, {2, 2}, {4, 4}), std::invalid_argument);
  EXPECT_THROW(astar(env, {0, 0}, {2, 0}), std::invalid_argument);
}

TEST(Astar, PathIsValidAndMatchesReportedCost) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    auto env = oracle::random_env(15, 15, 0.25, rng);
    auto cells = oracle::free_cells(env);
    if (cells.size() < 2) continue;
    std::uniform_int_distribution<std::size_t> pick(0, cells.size() - 1);
    const auto s = cells[pick(rng)], g = cells[pick(rng)];
    try {
      const auto p = astar(env, s, g);
      ASSERT_EQ(p.cells.front(), s);
      ASSERT_EQ(p.cells.back(), g);
      PathCost sum;
      for (std::size_t k = 1; k < p.cells.size(); ++k) {
        ASSERT_TRUE(env.is_free(p.cells[k]));
        ASSERT_TRUE(is_adjacent8(p.cells[k - 1], p.cells[k]));
        sum = sum + PathCost::step(p.cells[k] - p.cells[k - 1]);
      }
      EXPECT_EQ(sum, p.cost);
    } catch (const NoPathError&) {
    }
  }
}

TEST(Astar, EqualsDijkstraOracleOnRandomGrids) {
  std::mt19937_64 rng(2024);
  int solvable = 0;
  for (int trial = 0; trial < 100; ++trial) {
    auto env = oracle::random_env(20, 20, 0.2, rng);
    auto cells = oracle::free_cells(env);
    std::uniform_int_distribution<std::size_t> pick(0, cells.size() - 1);
    const auto s = cells[pick(rng)], g = cells[pick(rng)];
    const auto expected = oracle::dijkstra_counts(env, s, g);
    if (!expected) {
      EXPECT_THROW(astar(env, s, g), NoPathError);
      continue;
    }
    ++solvable;
    const auto p = astar(env, s, g);
    EXPECT_EQ(p.cost.straight(), expected->first) << "trial " << trial;
    EXPECT_EQ(p.cost.diagonal(), expected->second) << "trial " << trial;
  }
  EXPECT_GT(solvable, 50);
}

TEST(Astar, Deterministic) {
  std::mt19937_64 rng(8);
  auto env = oracle::random_env(20, 20, 0.2, rng);
  auto cells = oracle::free_cells(env);
  const auto a = astar(env, cells.front(), cells.back());
  const auto b = astar(env, cells.front(), cells.back());
  EXPECT_EQ(a.cells, b.cells);
}
