#include "navfield/agent.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace navfield {

namespace {
constexpr double kBudgetSlack = 1e-9;
}

void Agent::remember(WorldPoint p) {
  history.push_back(p);
  while (history.size() > history_capacity) history.pop_front();
}

SpatioTemporalInfo sense(const Agent& agent, const GridEnvironment& env, std::span<const Agent> agents,
                         const FieldMatrix& nav) {
  (void)agent;
  SpatioTemporalInfo info;
  info.env = &env;
  info.nav = &nav;
  for (const auto& a : agents)
    if (a.state == AgentState::active) info.crowd.push_back({a.id, a.cell, a.velocity});
  return info;
}

void Occupancy::claim(int agent_id, std::span<const GridCoord> cells) {
  release(agent_id);
  auto& mine = claims_[agent_id];
  for (const auto& c : cells) {
    if (!env_->in_bounds(c)) continue;
    mine.push_back(c);
    ++counts_[env_->index(c)];
  }
}

void Occupancy::release(int agent_id) {
  auto it = claims_.find(agent_id);
  if (it == claims_.end()) return;
  for (const auto& c : it->second) --counts_[env_->index(c)];
  claims_.erase(it);
}

bool Occupancy::blocked_for(GridCoord c, int agent_id) const {
  if (!env_->in_bounds(c)) return true;
  int total = counts_[env_->index(c)];
  if (total == 0) return false;
  if (auto it = claims_.find(agent_id); it != claims_.end())
    total -= static_cast<int>(std::count(it->second.begin(), it->second.end(), c));
  return total > 0;
}

std::optional<GridCoord> plan_step(const Agent& agent, const FieldMatrix& mg, const GridEnvironment& env,
                                   const Occupancy& occupancy) {
  if (agent.state != AgentState::active || !env.is_free(agent.cell)) return std::nullopt;
  std::optional<GridCoord> best;
  double best_value = kInfinity;
  for (const auto& n : neighbors8(agent.cell, env)) {
    if (occupancy.blocked_for(n, agent.id)) continue;
    const double v = mg.at(n);
    if (v < best_value) {
      best_value = v;
      best = n;
    }
  }
  if (!best || !(best_value < mg.at(agent.cell))) return std::nullopt;
  return best;
}

void execute(Agent& agent, std::optional<GridCoord> target, double dt, const GridEnvironment& env) {
  if (agent.state == AgentState::arrived) return;
  if (target && (!is_adjacent8(agent.cell, *target) || !env.is_free(*target)))
    throw std::invalid_argument("execute: target is not a free 8-adjacent cell");

  const double cap = 2.0 * env.cell_size() * std::numbers::sqrt2;
  agent.movement_budget = std::min(agent.movement_budget + agent.preferred_speed * dt, cap);

  bool moved = false;
  if (target) {
    const double cost = is_diagonal_step(agent.cell, *target) ? std::numbers::sqrt2 * env.cell_size()
                                                              : env.cell_size();
    if (agent.movement_budget + kBudgetSlack >= cost) {
      const WorldPoint to = grid_to_world(*target, env);
      agent.velocity = {(to.x - agent.world_pos.x) / dt, (to.y - agent.world_pos.y) / dt};
      agent.world_pos = to;
      agent.cell = *target;
      agent.movement_budget = std::max(0.0, agent.movement_budget - cost);
      moved = true;
    }
  }
  if (!moved) agent.velocity = {};
  agent.remember(agent.world_pos);
  if (agent.cell == agent.destination) agent.state = AgentState::arrived;
}

PedestrianSweep sweep_cells(int agent_id, GridCoord old_cell, GridCoord new_cell, const GridEnvironment& env) {
  if (old_cell != new_cell && !is_adjacent8(old_cell, new_cell))
    throw std::invalid_argument("sweep_cells: cells are neither equal nor adjacent");
  PedestrianSweep sweep{agent_id, {}};
  auto add = [&](GridCoord c) {
    if (env.in_bounds(c)) sweep.cells.push_back(c);
  };
  add(old_cell);
  if (new_cell == old_cell) return sweep;
  add(new_cell);
  if (is_diagonal_step(old_cell, new_cell)) {
    add({new_cell.i, old_cell.j});
    add({old_cell.i, new_cell.j});
  }
  return sweep;
}

}  // namespace navfield
