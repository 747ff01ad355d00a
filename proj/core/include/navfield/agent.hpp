#pragma once

#include <deque>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "navfield/field_matrix.hpp"
#include "navfield/grid.hpp"
#include "navfield/repulsion.hpp"

namespace navfield {

enum class AgentState { active, arrived };

struct Velocity {
  double vx = 0.0;
  double vy = 0.0;
};

struct Agent {
  int id = 0;
  GridCoord cell;
  WorldPoint world_pos;
  Velocity velocity;
  double preferred_speed = 1.0;  // m/s
  GridCoord destination;
  double movement_budget = 0.0;  // meters
  std::deque<WorldPoint> history;  // oldest first, at most history_capacity
  std::size_t history_capacity = 8;
  AgentState state = AgentState::active;

  void remember(WorldPoint p);
};

struct CrowdMember {
  int id = 0;
  GridCoord cell;
  Velocity velocity;
};

/// What an agent perceives at the start of its turn.
struct SpatioTemporalInfo {
  const GridEnvironment* env = nullptr;
  std::vector<CrowdMember> crowd;
  const FieldMatrix* nav = nullptr;
};

SpatioTemporalInfo sense(const Agent& agent, const GridEnvironment& env, std::span<const Agent> agents,
                         const FieldMatrix& nav);

/// Cells claimed by agents within the current step: their current cell, or
/// their whole sweep once they have moved.
class Occupancy {
 public:
  explicit Occupancy(const GridEnvironment& env) : env_(&env), counts_(env.cell_count(), 0) {}

  /// Replaces the cells claimed by `agent_id`.
  void claim(int agent_id, std::span<const GridCoord> cells);
  void release(int agent_id);
  /// True when some agent other than `agent_id` claims `c`.
  bool blocked_for(GridCoord c, int agent_id) const;

 private:
  const GridEnvironment* env_;
  std::vector<int> counts_;
  std::unordered_map<int, std::vector<GridCoord>> claims_;
};

/// Picks the free, unclaimed neighbour with the lowest M_G (first in
/// neighbour order on ties). Returns nullopt (wait) when no finite candidate
/// exists or the best one does not improve on the current cell.
std::optional<GridCoord> plan_step(const Agent& agent, const FieldMatrix& mg, const GridEnvironment& env,
                                   const Occupancy& occupancy);

/// Semi-continuous movement. The agent accrues preferred_speed * dt of travel
/// budget per step (capped at two diagonal cells) and hops to `target` once
/// the budget covers the hop. Throws std::invalid_argument if `target` is not
/// 8-adjacent to the agent's cell.
void execute(Agent& agent, std::optional<GridCoord> target, double dt, const GridEnvironment& env);

/// Supercover of the move old -> new restricted to the grid.
PedestrianSweep sweep_cells(int agent_id, GridCoord old_cell, GridCoord new_cell, const GridEnvironment& env);

}  // namespace navfield
