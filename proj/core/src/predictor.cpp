#include "navfield/predictor.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "navfield/errors.hpp"
#include "navfield/path_search.hpp"

namespace navfield {

namespace {

constexpr double kBaselineSigma = 1e-6;

WorldPoint lerp(WorldPoint a, WorldPoint b, double t) { return {a.x + (b.x - a.x) * t, a.y + (b.y - a.y) * t}; }

}  // namespace

TrendDistribution baseline_trend(const AgentHistory& agent, int step, const GridEnvironment& env,
                                 std::size_t horizon, double dt) {
  if (agent.positions.empty()) throw std::invalid_argument("baseline_trend: agent has no position history");
  const GridCoord here = world_to_grid(agent.positions.back(), env);

  std::vector<WorldPoint> polyline;
  try {
    for (const auto& c : astar(env, here, agent.destination).cells) polyline.push_back(grid_to_world(c, env));
  } catch (const NoPathError&) {
    polyline = {grid_to_world(here, env)};
  }

  TrendDistribution dist;
  dist.agent_id = agent.agent_id;
  dist.made_at_step = step;
  dist.steps.reserve(horizon);
  const double stride = agent.preferred_speed * dt;
  std::size_t seg = 0;
  double seg_start = 0.0;  // arc length at polyline[seg]
  for (std::size_t t = 1; t <= horizon; ++t) {
    const double s = stride * static_cast<double>(t);
    WorldPoint p = polyline.back();
    while (seg + 1 < polyline.size()) {
      const double len = std::hypot(polyline[seg + 1].x - polyline[seg].x, polyline[seg + 1].y - polyline[seg].y);
      if (s <= seg_start + len) {
        p = lerp(polyline[seg], polyline[seg + 1], (s - seg_start) / len);
        break;
      }
      seg_start += len;
      ++seg;
    }
    dist.steps.push_back({p.x, p.y, kBaselineSigma, kBaselineSigma, 0.0});
  }
  return dist;
}

TrendMap BaselinePredictor::predict(const HistorySnapshot& snapshot, const GridEnvironment& env, std::uint64_t) {
  TrendMap out;
  for (const auto& a : snapshot.agents) out.emplace(a.agent_id, baseline_trend(a, snapshot.step, env, horizon_, dt_));
  return out;
}

TrendFilePredictor::TrendFilePredictor(std::vector<TrendDistribution> trends, std::size_t horizon, double dt)
    : fallback_(horizon, dt) {
  for (auto& t : trends) {
    t.validate(horizon);
    by_agent_[t.agent_id].push_back(std::move(t));
  }
  for (auto& [id, list] : by_agent_)
    std::stable_sort(list.begin(), list.end(),
                     [](const auto& a, const auto& b) { return a.made_at_step < b.made_at_step; });
}

TrendFilePredictor TrendFilePredictor::load(const std::filesystem::path& path, std::size_t horizon, double dt) {
  return TrendFilePredictor(load_trend_jsonl(path, horizon), horizon, dt);
}

TrendMap TrendFilePredictor::predict(const HistorySnapshot& snapshot, const GridEnvironment& env, std::uint64_t seed) {
  TrendMap out;
  HistorySnapshot missing{snapshot.cycle, snapshot.step, {}};
  for (const auto& a : snapshot.agents) {
    const TrendDistribution* chosen = nullptr;
    if (auto it = by_agent_.find(a.agent_id); it != by_agent_.end()) {
      // Last record with made_at_step <= step; on duplicates the later line wins.
      for (const auto& t : it->second) {
        if (t.made_at_step > snapshot.step) break;
        chosen = &t;
      }
    }
    if (chosen)
      out.emplace(a.agent_id, *chosen);
    else
      missing.agents.push_back(a);
  }
  out.merge(fallback_.predict(missing, env, seed));
  return out;
}

LockstepPredictor::LockstepPredictor(std::filesystem::path dir, std::chrono::milliseconds timeout,
                                     std::chrono::milliseconds poll_interval, std::size_t horizon, double dt)
    : dir_(std::move(dir)), timeout_(timeout), poll_interval_(poll_interval), horizon_(horizon), fallback_(horizon, dt) {
  std::filesystem::create_directories(dir_);
}

TrendMap LockstepPredictor::predict(const HistorySnapshot& snapshot, const GridEnvironment& env, std::uint64_t seed) {
  const std::string tag = std::to_string(snapshot.cycle);
  std::ostringstream history;
  write_history_jsonl(history, snapshot);
  write_file_atomically(dir_ / ("history_" + tag + ".jsonl"), history.str());

  const auto trends_path = dir_ / ("trends_" + tag + ".jsonl");
  const auto deadline = std::chrono::steady_clock::now() + timeout_;
  while (!std::filesystem::exists(trends_path)) {
    if (std::chrono::steady_clock::now() >= deadline)
      throw PredictorUnavailable("lockstep predictor: timed out waiting for " + trends_path.string());
    std::this_thread::sleep_for(poll_interval_);
  }

  TrendMap out;
  for (auto& t : load_trend_jsonl(trends_path, horizon_)) out.insert_or_assign(t.agent_id, std::move(t));
  HistorySnapshot missing{snapshot.cycle, snapshot.step, {}};
  for (const auto& a : snapshot.agents)
    if (!out.contains(a.agent_id)) missing.agents.push_back(a);
  // Records for agents not in the snapshot are ignored.
  std::erase_if(out, [&](const auto& kv) {
    return std::none_of(snapshot.agents.begin(), snapshot.agents.end(),
                        [&](const AgentHistory& a) { return a.agent_id == kv.first; });
  });
  out.merge(fallback_.predict(missing, env, seed));
  return out;
}

std::unique_ptr<TrendPredictor> make_predictor(const PredictorKind& kind, std::size_t horizon, double dt) {
  switch (kind.type) {
    case PredictorKind::Type::baseline:
      return std::make_unique<BaselinePredictor>(horizon, dt);
    case PredictorKind::Type::trend_file:
      return std::make_unique<TrendFilePredictor>(TrendFilePredictor::load(kind.path, horizon, dt));
    case PredictorKind::Type::lockstep:
      return std::make_unique<LockstepPredictor>(kind.path, kind.timeout, kind.poll_interval, horizon, dt);
  }
  throw std::invalid_argument("make_predictor: unknown predictor type");
}

}  // namespace navfield
