#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "navfield/agent.hpp"
#include "navfield/direction_field.hpp"
#include "navfield/field_matrix.hpp"
#include "navfield/grid.hpp"
#include "navfield/predictor.hpp"
#include "navfield/repulsion.hpp"

namespace navfield {

struct SimConfig {
  double dt = 0.4;            // seconds per step
  int t_p = 12;               // prediction horizon, steps
  int t_d = 6;                // data-driven period, steps (1 <= t_d <= t_p)
  int h_obs = 8;              // observed history length
  int max_steps = 200;
  std::uint64_t seed = 0;
  double default_speed = 1.0;  // m/s, for agents without a preferred speed
  FieldParams field_params;
  PredictorKind predictor;

  /// Throws std::invalid_argument when an invariant is violated.
  void validate() const;
};

/// Initial description of one agent.
struct AgentSpec {
  int id = 0;
  GridCoord start;
  GridCoord destination;
  double preferred_speed = 0.0;  // <= 0 means SimConfig::default_speed
  std::vector<WorldPoint> observed;  // prior positions, oldest first
  int activation_step = 0;
};

struct TrajectoryRow {
  int step = 0;
  int agent_id = 0;
  double x = 0.0;
  double y = 0.0;
  AgentState state = AgentState::active;
};

struct AgentSummary {
  int id = 0;
  bool arrived = false;
  int arrival_step = -1;
  double distance = 0.0;    // meters
  double mean_speed = 0.0;  // m/s
};

struct RunSummary {
  int steps = 0;
  int agents = 0;
  int arrived = 0;
  double wall_seconds = 0.0;
  std::vector<AgentSummary> per_agent;
};

/// Per-agent fields derived from the most recent trend.
struct AgentFields {
  DirectionField direction;
  FieldMatrix navigation;  // M_F
  FieldMatrix pedestrian;  // M_I
  FieldMatrix global;      // M_G
};

/// Complete simulation state.
///
/// Within a step, agents plan in ascending id order against their M_G from
/// the end of the previous step, while cell exclusion uses live positions.
/// Afterwards pedestrian fields are rebuilt from this step's sweeps, trends
/// are refreshed every t_d steps, and all M_G are recombined.
class World {
 public:
  /// Builds M_C, predicts cycle 0 and every agent's fields, and logs step 0.
  /// Throws std::invalid_argument for agents on obstacles, shared start cells,
  /// duplicate ids or a bad configuration.
  World(GridEnvironment env, std::vector<AgentSpec> agents, SimConfig config,
        std::unique_ptr<TrendPredictor> predictor = nullptr);

  void step();
  /// Steps until every agent has arrived or max_steps is reached.
  RunSummary run();

  bool finished() const;
  int current_step() const noexcept { return step_; }
  int prediction_cycles() const noexcept { return cycle_; }
  const GridEnvironment& env() const noexcept { return env_; }
  const SimConfig& config() const noexcept { return config_; }

  /// Active and arrived agents in ascending id order.
  std::span<const Agent> agents() const noexcept { return agents_; }
  const Agent* find_agent(int id) const;
  std::span<const TrajectoryRow> log() const noexcept { return log_; }
  std::span<const PedestrianSweep> sweeps() const noexcept { return sweeps_; }

  const FieldMatrix& obstacle_matrix() const noexcept { return obstacle_matrix_; }
  /// Fields of an active agent; nullptr once it has arrived.
  const AgentFields* fields(int id) const;

  RunSummary summarize() const;

 private:
  std::vector<int> activate_pending();
  void refresh_trends(std::span<const int> ids);
  void rebuild_pedestrian_fields();
  void rebuild_global_fields();
  void log_rows();
  Agent* find_mutable(int id);
  std::uint64_t derive_seed(int agent_id, int purpose) const;

  GridEnvironment env_;
  SimConfig config_;
  std::unique_ptr<TrendPredictor> predictor_;
  std::vector<Agent> agents_;
  std::vector<AgentSpec> pending_;
  std::map<int, AgentFields> fields_;
  std::map<int, int> arrival_step_;
  std::vector<PedestrianSweep> sweeps_;
  FieldMatrix obstacle_matrix_;
  std::vector<TrajectoryRow> log_;
  int step_ = 0;
  int cycle_ = 0;
  double wall_seconds_ = 0.0;
};

/// Shared per-agent pipeline: sample the trend, stitch a trend line (falling
/// back to the direct route, then to the destination alone, when the samples
/// cannot reach the destination), expand it and convert to M_F.
struct NavigationField {
  DirectionField direction;
  FieldMatrix matrix;  // M_F
};

NavigationField build_navigation(const TrendDistribution& trend, GridCoord current, GridCoord destination,
                             const FieldParams& params, const GridEnvironment& env, std::uint64_t sample_seed,
                             std::uint64_t expand_seed);

}  // namespace navfield
