#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "navfield/dataset.hpp"
#include "navfield/errors.hpp"
#include "oracles.hpp"

using namespace navfield;

namespace {

TrajectoryDataset parse(const std::string& text, double interval = 0.4) {
  std::istringstream in(text);
  return parse_trajectories(in, "mem", interval);
}

// One agent walking along +x from x0 at 0.4 m per frame.
std::string walker(int id, int frames, double x0, double y, long first_frame = 0, long frame_step = 1) {
  std::ostringstream out;
  for (int k = 0; k < frames; ++k) out << first_frame + k * frame_step << '\t' << id << '\t' << x0 + 0.4 * k << '\t' << y << '\n';
  return out.str();
}

}  // namespace

TEST(ParseTrajectories, Row) {
  const auto ds = parse("10\t3\t1.25\t-0.40\n");
  ASSERT_EQ(ds.rows.size(), 1u);
  EXPECT_EQ(ds.rows[0].frame, 10);
  EXPECT_EQ(ds.rows[0].agent_id, 3);
  EXPECT_EQ(ds.rows[0].x, 1.25);
  EXPECT_EQ(ds.rows[0].y, -0.40);
}

TEST(ParseTrajectories, CommentsAndBlankLines) {
  EXPECT_TRUE(parse("# header\n\n   \n# more\n").rows.empty());
}

TEST(ParseTrajectories, FloatFormattedIntegersAndSpaces) {
  const auto ds = parse("780.0 1.0   8.46  3.59\n");
  EXPECT_EQ(ds.rows[0].frame, 780);
  EXPECT_EQ(ds.rows[0].agent_id, 1);
}

TEST(ParseTrajectories, ShuffledInputSorts) {
  std::mt19937_64 rng(1);
  std::string sorted_text = walker(1, 5, 0, 0) + walker(2, 5, 0, 1) + walker(3, 4, 1, 2, 3);
  std::vector<std::string> lines;
  std::istringstream in(sorted_text);
  for (std::string l; std::getline(in, l);) lines.push_back(l + "\n");
  std::shuffle(lines.begin(), lines.end(), rng);
  std::string shuffled;
  for (const auto& l : lines) shuffled += l;
  const auto a = parse(sorted_text), b = parse(shuffled);
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (std::size_t k = 0; k < a.rows.size(); ++k) {
    EXPECT_EQ(a.rows[k].frame, b.rows[k].frame);
    EXPECT_EQ(a.rows[k].agent_id, b.rows[k].agent_id);
    EXPECT_EQ(a.rows[k].x, b.rows[k].x);
  }
  EXPECT_EQ(a.agent_ids(), (std::vector<int>{1, 2, 3}));
}

TEST(ParseTrajectories, ErrorsCarryLineNumbers) {
  const std::vector<std::pair<std::string, std::size_t>> cases{
      {"1\t1\t0\t0\n2\t1\t0\n", 2},
      {"1\t1\t0\t0\n\n2\t1\tabc\t0\n", 3},
      {"1.5\t1\t0\t0\n", 1},
      {"1\t1\t0\t0\n1\t1\t2\t2\n", 2},
  };
  for (const auto& [text, line] : cases) {
    try {
      parse(text);
      FAIL() << "accepted: " << text;
    } catch (const ParseError& e) {
      EXPECT_EQ(e.line(), line) << text;
    }
  }
}

TEST(WriteTrajectories, RoundTrip) {
  const auto ds = parse(walker(4, 3, 0.5, 1.25) + walker(2, 2, 1, 1));
  std::ostringstream out;
  write_trajectories(out, ds);
  const auto again = parse(out.str());
  ASSERT_EQ(again.rows.size(), 5u);
  EXPECT_EQ(again.rows[0].agent_id, 2);
  EXPECT_NEAR(again.rows[4].x, 1.3, 1e-9);
}

TEST(Resample, IdentityWhenIntervalsMatch) {
  const auto ds = parse(walker(1, 6, 0, 0, 100) + walker(2, 4, 1, 1, 102));
  const auto r = resample(ds, 0.4, 0.4);
  ASSERT_EQ(r.rows.size(), ds.rows.size());
  for (std::size_t k = 0; k < r.rows.size(); ++k) {
    EXPECT_EQ(r.rows[k].frame, ds.rows[k].frame - 100);
    EXPECT_EQ(r.rows[k].x, ds.rows[k].x);
  }
}

TEST(Resample, KeepsEveryFourthFrame) {
  const auto ds = parse(walker(1, 17, 0, 0), 0.1);
  const auto r = resample(ds, 0.4, 0.1);
  ASSERT_EQ(r.rows.size(), 5u);
  for (std::size_t k = 0; k < 5; ++k) {
    EXPECT_EQ(r.rows[k].frame, static_cast<long>(k));
    EXPECT_EQ(r.rows[k].x, ds.rows[4 * k].x);
  }
}

TEST(Resample, EthStyleFrameNumbers) {
  // Frames every 10 units at 0.04 s per unit -> one sample per 0.4 s step.
  const auto ds = parse(walker(1, 5, 0, 0, 780, 10));
  const auto r = resample(ds, 0.4, 0.04);
  ASSERT_EQ(r.rows.size(), 5u);
  EXPECT_EQ(r.rows.back().frame, 4);
}

TEST(Resample, InterpolatedPointsLieOnBracketingSegment) {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> n(0.0, 1.0);
  std::ostringstream text;
  for (int k = 0; k < 30; ++k) text << k * 3 << "\t1\t" << n(rng) << '\t' << n(rng) << '\n';
  const auto ds = parse(text.str(), 0.1);
  const auto r = resample(ds, 0.4, 0.1);  // samples at source frames 0, 4, 8, ...
  for (const auto& row : r.rows) {
    const double t = row.frame * 4.0;
    const auto lo = static_cast<std::size_t>(std::floor(t / 3.0));
    const auto& a = ds.rows[lo];
    if (std::fmod(t, 3.0) == 0.0) {
      EXPECT_EQ(row.x, a.x);
      continue;
    }
    const auto& b = ds.rows[lo + 1];
    const double w = (t - a.frame) / (b.frame - a.frame);
    EXPECT_NEAR(row.x, a.x + (b.x - a.x) * w, 1e-12);
    EXPECT_NEAR(row.y, a.y + (b.y - a.y) * w, 1e-12);
    // Collinear with the bracketing frames and between them.
    const double cross = (b.x - a.x) * (row.y - a.y) - (b.y - a.y) * (row.x - a.x);
    EXPECT_NEAR(cross, 0.0, 1e-9);
    EXPECT_GE(w, 0.0);
    EXPECT_LE(w, 1.0);
  }
}

TEST(Resample, RejectsNonPositiveIntervals) {
  EXPECT_THROW(resample({}, 0.0, 0.4), std::invalid_argument);
  EXPECT_THROW(resample({}, 0.4, -1.0), std::invalid_argument);
}

TEST(ExtractAgents, LengthThreshold) {
  auto env = oracle::empty_env(30, 10);
  const auto ds = parse(walker(1, 20, 0.2, 1.0) + walker(2, 19, 0.2, 3.0));
  const auto ex = extract_agents(ds, env, 8, 20);
  ASSERT_EQ(ex.seeds.size(), 1u);
  const auto& s = ex.seeds[0];
  EXPECT_EQ(s.id, 1);
  EXPECT_EQ(s.observed.size(), 8u);
  EXPECT_EQ(s.real_future.size(), 12u);
  EXPECT_EQ(s.start, world_to_grid(s.observed.back(), env));
  EXPECT_EQ(s.destination, world_to_grid(s.real_future.back(), env));
  EXPECT_EQ(s.activation_step, 7);
  EXPECT_NEAR(s.preferred_speed, 1.0, 1e-9);
  EXPECT_EQ(ex.skipped_short, 1);
  EXPECT_EQ(ex.distinct_agents, 2);
}

TEST(ExtractAgents, BlockedEndpointsAreSkipped) {
  auto env = oracle::with_obstacles(30, 10, {{0, 2}, {1, 2}, {2, 2}, {3, 2}, {4, 2}, {5, 2}, {6, 2}, {7, 2}});
  const auto ds = parse(walker(1, 20, 0.2, 3.0) + walker(2, 20, 0.2, 0.9) + walker(3, 20, 20.0, 3.0));
  const auto ex = extract_agents(ds, env, 8, 20);
  EXPECT_EQ(ex.skipped_blocked, 2);  // agent 2 starts inside the wall, agent 3 ends off the grid
  EXPECT_EQ(ex.seeds.size() + static_cast<std::size_t>(ex.skipped_blocked + ex.skipped_short),
            static_cast<std::size_t>(ex.distinct_agents));
}

TEST(ExtractAgents, DuplicateStartsAreRelocated) {
  auto env = oracle::empty_env(30, 10);
  const auto ds = parse(walker(1, 20, 0.2, 1.0) + walker(2, 20, 0.25, 1.05) + walker(3, 20, 0.21, 1.01));
  const auto ex = extract_agents(ds, env, 8, 20);
  ASSERT_EQ(ex.seeds.size(), 3u);
  EXPECT_EQ(ex.relocated, 2);
  std::set<GridCoord> starts;
  for (const auto& s : ex.seeds) {
    EXPECT_TRUE(env.is_free(s.start));
    EXPECT_TRUE(starts.insert(s.start).second);
  }
  EXPECT_EQ(chebyshev_distance(ex.seeds[1].start, ex.seeds[0].start), 1);
}

TEST(ExtractAgents, StationaryAgentGetsSpeedFloor) {
  auto env = oracle::empty_env(10, 10);
  std::ostringstream text;
  for (int k = 0; k < 20; ++k) text << k << "\t1\t1.0\t1.0\n";
  const auto ex = extract_agents(parse(text.str()), env, 8, 20);
  ASSERT_EQ(ex.seeds.size(), 1u);
  EXPECT_EQ(ex.seeds[0].preferred_speed, kMinPreferredSpeed);
}

TEST(ExtractAgents, Deterministic) {
  auto env = oracle::empty_env(30, 10);
  const auto ds = resample(parse(walker(1, 40, 0.2, 1.0, 0, 1) + walker(2, 45, 0.3, 1.1, 2, 1), 0.1), 0.4, 0.1);
  const auto a = extract_agents(ds, env, 8, 10);
  const auto b = extract_agents(ds, env, 8, 10);
  ASSERT_EQ(a.seeds.size(), b.seeds.size());
  for (std::size_t k = 0; k < a.seeds.size(); ++k) {
    EXPECT_EQ(a.seeds[k].start, b.seeds[k].start);
    EXPECT_EQ(a.seeds[k].activation_step, b.seeds[k].activation_step);
  }
}

TEST(ConvertColumns, ReordersColumns) {
  std::istringstream in("1,5,2.0,3.0,extra\n2,5,2.5,3.1,extra\n");
  std::ostringstream out;
  convert_columns(in, out, {"frame", "id", "y", "x", "_"}, "mem");
  const auto ds = parse(out.str());
  ASSERT_EQ(ds.rows.size(), 2u);
  EXPECT_EQ(ds.rows[0].x, 3.0);
  EXPECT_EQ(ds.rows[0].y, 2.0);
}

TEST(ConvertColumns, RejectsBadSpecs) {
  std::istringstream in("1 2 3 4\n");
  std::ostringstream out;
  EXPECT_THROW(convert_columns(in, out, {"frame", "id", "x"}, "mem"), std::invalid_argument);
  EXPECT_THROW(convert_columns(in, out, {"frame", "frame", "x", "y"}, "mem"), std::invalid_argument);
}
