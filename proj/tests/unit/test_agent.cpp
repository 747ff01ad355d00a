#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "navfield/agent.hpp"
#include "oracles.hpp"

using namespace navfield;

namespace {

Agent make_agent(int id, GridCoord cell, const GridEnvironment& env, double speed = 1.0) {
  Agent a;
  a.id = id;
  a.cell = cell;
  a.world_pos = grid_to_world(cell, env);
  a.preferred_speed = speed;
  a.destination = {env.width() - 1, env.height() - 1};
  return a;
}

std::vector<GridCoord> sorted(std::vector<GridCoord> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST(PlanStep, PicksArgmin) {
  auto env = oracle::empty_env(5, 5);
  FieldMatrix mg(5, 5, FieldKind::global, 100.0);
  const double values[8] = {3, 2, 5, 7, 4, 9, 6, 8};
  for (std::size_t k = 0; k < 8; ++k) mg.at(GridCoord{2, 2} + kNeighborOffsets[k]) = values[k];
  mg.at({2, 2}) = 10.0;
  Occupancy occ(env);
  const auto a = make_agent(1, {2, 2}, env);
  EXPECT_EQ(plan_step(a, mg, env, occ), (GridCoord{2, 2} + kNeighborOffsets[1]));
}

TEST(PlanStep, TieGoesToEarlierOffset) {
  auto env = oracle::empty_env(5, 5);
  FieldMatrix mg(5, 5, FieldKind::global, 100.0);
  mg.at({2, 2}) = 10.0;
  mg.at(GridCoord{2, 2} + kNeighborOffsets[6]) = 1.0;
  mg.at(GridCoord{2, 2} + kNeighborOffsets[3]) = 1.0;
  Occupancy occ(env);
  EXPECT_EQ(plan_step(make_agent(1, {2, 2}, env), mg, env, occ), (GridCoord{2, 2} + kNeighborOffsets[3]));
}

TEST(PlanStep, BoxedInWaits) {
  auto env = oracle::empty_env(5, 5);
  FieldMatrix mg(5, 5, FieldKind::global, kInfinity);
  mg.at({2, 2}) = 3.0;
  Occupancy occ(env);
  EXPECT_FALSE(plan_step(make_agent(1, {2, 2}, env), mg, env, occ));
}

TEST(PlanStep, LocalMinimumWaits) {
  auto env = oracle::empty_env(5, 5);
  FieldMatrix mg(5, 5, FieldKind::global, 4.0);
  mg.at({2, 2}) = 3.0;
  Occupancy occ(env);
  EXPECT_FALSE(plan_step(make_agent(1, {2, 2}, env), mg, env, occ));
}

TEST(PlanStep, SkipsOccupiedCells) {
  auto env = oracle::empty_env(5, 5);
  FieldMatrix mg(5, 5, FieldKind::global, 9.0);
  mg.at({2, 2}) = 10.0;
  mg.at({3, 3}) = 1.0;
  mg.at({3, 2}) = 2.0;
  Occupancy occ(env);
  const std::vector<GridCoord> other{{3, 3}};
  occ.claim(2, other);
  const std::vector<GridCoord> mine{{2, 2}};
  occ.claim(1, mine);
  EXPECT_EQ(plan_step(make_agent(1, {2, 2}, env), mg, env, occ), (GridCoord{3, 2}));
  occ.release(2);
  EXPECT_EQ(plan_step(make_agent(1, {2, 2}, env), mg, env, occ), (GridCoord{3, 3}));
}

TEST(PlanStep, IgnoresObstacleNeighbors) {
  auto env = oracle::with_obstacles(5, 5, {{1, 1}});
  FieldMatrix mg(5, 5, FieldKind::global, 9.0);
  mg.at({2, 2}) = 10.0;
  mg.at({1, 1}) = 0.0;  // never chosen even if the matrix says so
  Occupancy occ(env);
  const auto t = plan_step(make_agent(1, {2, 2}, env), mg, env, occ);
  ASSERT_TRUE(t);
  EXPECT_NE(*t, (GridCoord{1, 1}));
}

TEST(Occupancy, CountsOthersOnly) {
  auto env = oracle::empty_env(4, 4);
  Occupancy occ(env);
  const std::vector<GridCoord> a{{1, 1}, {1, 2}};
  occ.claim(1, a);
  EXPECT_FALSE(occ.blocked_for({1, 1}, 1));
  EXPECT_TRUE(occ.blocked_for({1, 1}, 2));
  EXPECT_TRUE(occ.blocked_for({-1, 0}, 2));
  const std::vector<GridCoord> b{{3, 3}};
  occ.claim(1, b);  // replaces the previous claim
  EXPECT_FALSE(occ.blocked_for({1, 1}, 2));
  EXPECT_TRUE(occ.blocked_for({3, 3}, 2));
}

TEST(Execute, OrthogonalOneCellPerStep) {
  auto env = oracle::empty_env(20, 20);
  auto a = make_agent(1, {0, 0}, env);
  for (int s = 1; s <= 5; ++s) {
    execute(a, GridCoord{0, s}, 0.4, env);
    EXPECT_EQ(a.cell, (GridCoord{0, s}));
    EXPECT_NEAR(a.movement_budget, 0.0, 1e-9);
    EXPECT_NEAR(a.velocity.vy, 1.0, 1e-9);
  }
}

TEST(Execute, DiagonalMovesFollowBudgetRecurrence) {
  auto env = oracle::empty_env(20, 20);
  auto a = make_agent(1, {0, 0}, env);
  const double cost = 0.4 * std::sqrt(2.0);
  double b = 0.0;
  std::vector<int> expected_moves, moves;
  for (int s = 1; s <= 10; ++s) {
    b += 0.4;
    if (b >= cost) {
      b -= cost;
      expected_moves.push_back(s);
    }
    const GridCoord before = a.cell;
    execute(a, GridCoord{a.cell.i + 1, a.cell.j + 1}, 0.4, env);
    if (a.cell != before) moves.push_back(s);
  }
  EXPECT_EQ(moves, expected_moves);
  EXPECT_EQ(moves, (std::vector<int>{2, 3, 5, 6, 8, 9, 10}));
}

TEST(Execute, WaitZeroesVelocity) {
  auto env = oracle::empty_env(5, 5);
  auto a = make_agent(1, {1, 1}, env);
  execute(a, GridCoord{2, 1}, 0.4, env);
  EXPECT_GT(a.velocity.vx, 0.0);
  execute(a, std::nullopt, 0.4, env);
  EXPECT_EQ(a.velocity.vx, 0.0);
  EXPECT_EQ(a.velocity.vy, 0.0);
  EXPECT_EQ(a.cell, (GridCoord{2, 1}));
}

TEST(Execute, ArrivalAndFreeze) {
  auto env = oracle::empty_env(5, 5);
  auto a = make_agent(1, {1, 1}, env);
  a.destination = {2, 1};
  execute(a, GridCoord{2, 1}, 0.4, env);
  EXPECT_EQ(a.state, AgentState::arrived);
  const auto pos = a.world_pos;
  execute(a, GridCoord{3, 1}, 0.4, env);
  EXPECT_EQ(a.world_pos, pos);
}

TEST(Execute, RejectsNonAdjacentTarget) {
  auto env = oracle::with_obstacles(5, 5, {{2, 2}});
  auto a = make_agent(1, {1, 1}, env);
  EXPECT_THROW(execute(a, GridCoord{3, 1}, 0.4, env), std::invalid_argument);
  EXPECT_THROW(execute(a, GridCoord{2, 2}, 0.4, env), std::invalid_argument);
}

TEST(Execute, BudgetIsCapped) {
  auto env = oracle::empty_env(5, 5);
  auto a = make_agent(1, {2, 2}, env, 50.0);
  for (int s = 0; s < 10; ++s) execute(a, std::nullopt, 0.4, env);
  EXPECT_LE(a.movement_budget, 2 * 0.4 * std::sqrt(2.0) + 1e-12);
}

TEST(Execute, SpeedBoundHoldsOnRandomRuns) {
  std::mt19937_64 rng(31);
  auto env = oracle::empty_env(60, 60);
  std::uniform_real_distribution<double> speed(0.2, 3.0);
  std::bernoulli_distribution wait(0.3);
  std::uniform_int_distribution<std::size_t> dir(0, 7);
  for (int trial = 0; trial < 20; ++trial) {
    auto a = make_agent(1, {30, 30}, env, speed(rng));
    std::vector<WorldPoint> pos{a.world_pos};
    for (int s = 0; s < 60; ++s) {
      std::optional<GridCoord> t;
      if (!wait(rng)) {
        const GridCoord n = a.cell + kNeighborOffsets[dir(rng)];
        if (env.is_free(n)) t = n;
      }
      execute(a, t, 0.4, env);
      pos.push_back(a.world_pos);
    }
    const double cap = 2 * 0.4 * std::sqrt(2.0);
    for (std::size_t from = 0; from < pos.size(); ++from)
      for (std::size_t to = from + 1; to < pos.size(); ++to) {
        double d = 0.0;
        for (std::size_t k = from + 1; k <= to; ++k) d += std::hypot(pos[k].x - pos[k - 1].x, pos[k].y - pos[k - 1].y);
        EXPECT_LE(d, a.preferred_speed * static_cast<double>(to - from) * 0.4 + cap + 1e-9);
      }
  }
}

TEST(Agent, HistoryIsBounded) {
  auto env = oracle::empty_env(20, 20);
  auto a = make_agent(1, {0, 0}, env);
  for (int s = 1; s <= 12; ++s) execute(a, GridCoord{0, s}, 0.4, env);
  EXPECT_EQ(a.history.size(), a.history_capacity);
  EXPECT_EQ(a.history.back(), a.world_pos);
}

TEST(SweepCells, Cases) {
  auto env = oracle::empty_env(5, 5);
  EXPECT_EQ(sweep_cells(1, {2, 2}, {2, 2}, env).cells, (std::vector<GridCoord>{{2, 2}}));
  EXPECT_EQ(sorted(sweep_cells(1, {0, 0}, {1, 0}, env).cells), (std::vector<GridCoord>{{0, 0}, {1, 0}}));
  EXPECT_EQ(sorted(sweep_cells(1, {0, 0}, {1, 1}, env).cells),
            (std::vector<GridCoord>{{0, 0}, {0, 1}, {1, 0}, {1, 1}}));
  EXPECT_THROW(sweep_cells(1, {0, 0}, {2, 0}, env), std::invalid_argument);
}

TEST(SweepCells, MatchesSupercoverOracle) {
  auto env = oracle::empty_env(7, 7);
  const GridCoord c{3, 3};
  for (auto d : kNeighborOffsets) {
    const auto got = sorted(sweep_cells(4, c, c + d, env).cells);
    EXPECT_EQ(got, sorted(oracle::supercover(c, c + d)));
  }
}

TEST(Sense, ReportsActiveCrowdOnly) {
  auto env = oracle::empty_env(5, 5);
  std::vector<Agent> agents{make_agent(1, {0, 0}, env), make_agent(2, {1, 1}, env), make_agent(3, {2, 2}, env)};
  FieldMatrix nav(5, 5, FieldKind::global);
  EXPECT_EQ(sense(agents[0], env, std::span(agents).first(1), nav).crowd.size(), 1u);
  auto info = sense(agents[0], env, agents, nav);
  ASSERT_EQ(info.crowd.size(), 3u);
  EXPECT_EQ(info.crowd[1].cell, (GridCoord{1, 1}));
  EXPECT_EQ(info.nav, &nav);
  agents[1].state = AgentState::arrived;
  EXPECT_EQ(sense(agents[0], env, agents, nav).crowd.size(), 2u);
}
