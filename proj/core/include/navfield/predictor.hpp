#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <vector>

#include "navfield/grid.hpp"
#include "navfield/trend.hpp"
#include "navfield/trend_io.hpp"

namespace navfield {

/// Which source supplies movement trends.
struct PredictorKind {
  enum class Type { baseline, trend_file, lockstep };

  Type type = Type::baseline;
  std::filesystem::path path;  // trend file, or lockstep exchange directory
  std::chrono::milliseconds timeout{30000};
  std::chrono::milliseconds poll_interval{20};

  static PredictorKind baseline() { return {}; }
  static PredictorKind trend_file(std::filesystem::path file) { return {Type::trend_file, std::move(file)}; }
  static PredictorKind lockstep(std::filesystem::path dir, std::chrono::milliseconds timeout = std::chrono::seconds(30)) {
    PredictorKind k{Type::lockstep, std::move(dir)};
    k.timeout = timeout;
    return k;
  }
};

using TrendMap = std::map<int, TrendDistribution>;

class TrendPredictor {
 public:
  virtual ~TrendPredictor() = default;

  /// One trend per snapshot agent; every result satisfies
  /// TrendDistribution::validate(horizon).
  virtual TrendMap predict(const HistorySnapshot& snapshot, const GridEnvironment& env, std::uint64_t seed) = 0;
};

/// Shortest-path trend: means walk the A* path from the agent's current cell
/// toward its destination at preferred_speed * dt per step, clamped at the
/// destination, with sigma = 1e-6 m and rho = 0. If the destination is
/// unreachable every mean stays at the current cell center.
TrendDistribution baseline_trend(const AgentHistory& agent, int step, const GridEnvironment& env,
                                 std::size_t horizon, double dt);

class BaselinePredictor final : public TrendPredictor {
 public:
  BaselinePredictor(std::size_t horizon, double dt) : horizon_(horizon), dt_(dt) {}
  TrendMap predict(const HistorySnapshot& snapshot, const GridEnvironment& env, std::uint64_t seed) override;

 private:
  std::size_t horizon_;
  double dt_;
};

/// Serves pre-computed trends: for each agent the record with the largest
/// made_at_step not after the current step. Agents without one fall back to
/// the baseline.
class TrendFilePredictor final : public TrendPredictor {
 public:
  TrendFilePredictor(std::vector<TrendDistribution> trends, std::size_t horizon, double dt);
  static TrendFilePredictor load(const std::filesystem::path& path, std::size_t horizon, double dt);

  TrendMap predict(const HistorySnapshot& snapshot, const GridEnvironment& env, std::uint64_t seed) override;

 private:
  std::map<int, std::vector<TrendDistribution>> by_agent_;  // sorted by made_at_step
  BaselinePredictor fallback_;
};

/// File-exchange with an external predictor process. Each call writes
/// `history_<cycle>.jsonl` into the exchange directory and waits for
/// `trends_<cycle>.jsonl`. Throws PredictorUnavailable on timeout.
class LockstepPredictor final : public TrendPredictor {
 public:
  LockstepPredictor(std::filesystem::path dir, std::chrono::milliseconds timeout,
                    std::chrono::milliseconds poll_interval, std::size_t horizon, double dt);

  TrendMap predict(const HistorySnapshot& snapshot, const GridEnvironment& env, std::uint64_t seed) override;

 private:
  std::filesystem::path dir_;
  std::chrono::milliseconds timeout_;
  std::chrono::milliseconds poll_interval_;
  std::size_t horizon_;
  BaselinePredictor fallback_;
};

std::unique_ptr<TrendPredictor> make_predictor(const PredictorKind& kind, std::size_t horizon, double dt);

}  // namespace navfield
