#include "navfield/sim.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <set>
#include <stdexcept>
#include <string>

#include "navfield/errors.hpp"
#include "navfield/metrics.hpp"
#include "navfield/path_search.hpp"
#include "navfield/trend.hpp"

namespace navfield {

namespace {

enum SeedPurpose : int { kSampleSeed = 1, kExpandSeed = 2, kPredictSeed = 3 };

std::string describe(GridCoord c) { return "(" + std::to_string(c.i) + "," + std::to_string(c.j) + ")"; }

}  // namespace

void SimConfig::validate() const {
  if (!(dt > 0.0)) throw std::invalid_argument("config: dt must be > 0");
  if (t_p < 1) throw std::invalid_argument("config: t_p must be >= 1");
  if (t_d < 1 || t_d > t_p) throw std::invalid_argument("config: t_d must satisfy 1 <= t_d <= t_p");
  if (h_obs < 1) throw std::invalid_argument("config: h_obs must be >= 1");
  if (max_steps < 1) throw std::invalid_argument("config: max_steps must be >= 1");
  if (!(default_speed > 0.0)) throw std::invalid_argument("config: default_speed must be > 0");
  field_params.validate();
}

NavigationField build_navigation(const TrendDistribution& trend, GridCoord current, GridCoord destination,
                                 const FieldParams& params, const GridEnvironment& env, std::uint64_t sample_seed,
                                 std::uint64_t expand_seed) {
  TrendLine line;
  try {
    const auto points = sample_trend_points(trend, env, sample_seed);
    line = interpolate_trend_line(points, destination, env);
  } catch (const NoPathError&) {
    try {
      line.cells = astar(env, current, destination).cells;
    } catch (const NoPathError&) {
      line.cells = {destination};
    }
  }
  auto direction = expand_field(raw_direction_vectors(line), line, params.r, env, expand_seed);
  auto matrix = field_to_matrix(direction, destination, params, env);
  return {std::move(direction), std::move(matrix)};
}

World::World(GridEnvironment env, std::vector<AgentSpec> agents, SimConfig config,
             std::unique_ptr<TrendPredictor> predictor)
    : env_(std::move(env)),
      config_(std::move(config)),
      predictor_(std::move(predictor)),
      obstacle_matrix_(env_.width(), env_.height(), FieldKind::obstacle) {
  config_.validate();
  if (!predictor_)
    predictor_ = make_predictor(config_.predictor, static_cast<std::size_t>(config_.t_p), config_.dt);

  std::sort(agents.begin(), agents.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  std::set<std::size_t> starts;
  for (std::size_t k = 0; k < agents.size(); ++k) {
    const auto& spec = agents[k];
    const std::string who = "agent " + std::to_string(spec.id);
    if (k > 0 && agents[k - 1].id == spec.id) throw std::invalid_argument("duplicate agent id " + std::to_string(spec.id));
    if (!env_.is_free(spec.start)) throw std::invalid_argument(who + ": start " + describe(spec.start) + " is not free");
    if (!env_.is_free(spec.destination))
      throw std::invalid_argument(who + ": destination " + describe(spec.destination) + " is not free");
    if (!starts.insert(env_.index(spec.start)).second)
      throw std::invalid_argument(who + ": start " + describe(spec.start) + " shared with another agent");
    if (spec.activation_step < 0) throw std::invalid_argument(who + ": negative activation step");
  }

  const auto& fp = config_.field_params;
  obstacle_matrix_ = magnitude_matrix(obstacle_field(env_, fp.delta, fp.lambda_o), FieldKind::obstacle);

  pending_ = std::move(agents);
  refresh_trends(activate_pending());
  rebuild_pedestrian_fields();
  rebuild_global_fields();
  log_rows();
}

const Agent* World::find_agent(int id) const {
  auto it = std::lower_bound(agents_.begin(), agents_.end(), id, [](const Agent& a, int v) { return a.id < v; });
  return (it != agents_.end() && it->id == id) ? &*it : nullptr;
}

Agent* World::find_mutable(int id) { return const_cast<Agent*>(std::as_const(*this).find_agent(id)); }

const AgentFields* World::fields(int id) const {
  auto it = fields_.find(id);
  return it == fields_.end() ? nullptr : &it->second;
}

bool World::finished() const {
  if (!pending_.empty()) return false;
  return std::none_of(agents_.begin(), agents_.end(), [](const Agent& a) { return a.state == AgentState::active; });
}

std::uint64_t World::derive_seed(int agent_id, int purpose) const {
  std::seed_seq seq{static_cast<std::uint32_t>(config_.seed), static_cast<std::uint32_t>(config_.seed >> 32),
                    static_cast<std::uint32_t>(agent_id), static_cast<std::uint32_t>(step_),
                    static_cast<std::uint32_t>(purpose)};
  std::uint32_t words[2];
  seq.generate(words, words + 2);
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

// Places pending agents whose activation step has come and whose start cell
// is not currently held by an active agent, then gives them trends and
// fields. Agents blocked at their start retry on the next step. Returns the
// ids that entered the crowd.
std::vector<int> World::activate_pending() {
  std::vector<int> placed;
  std::set<std::size_t> held;
  for (const auto& a : agents_)
    if (a.state == AgentState::active) held.insert(env_.index(a.cell));
  for (const auto& s : sweeps_)
    for (const auto& c : s.cells) held.insert(env_.index(c));

  std::vector<AgentSpec> still_pending;
  for (auto& spec : pending_) {
    if (spec.activation_step > step_ || held.contains(env_.index(spec.start))) {
      still_pending.push_back(std::move(spec));
      continue;
    }
    Agent a;
    a.id = spec.id;
    a.cell = spec.start;
    a.world_pos = grid_to_world(spec.start, env_);
    a.preferred_speed = spec.preferred_speed > 0.0 ? spec.preferred_speed : config_.default_speed;
    a.destination = spec.destination;
    a.history_capacity = static_cast<std::size_t>(config_.h_obs);
    for (const auto& p : spec.observed) a.remember(p);
    if (a.history.empty() || a.history.back() != a.world_pos) a.remember(a.world_pos);
    if (a.cell == a.destination) {
      a.state = AgentState::arrived;
      arrival_step_[a.id] = step_;
    } else {
      held.insert(env_.index(a.cell));
      placed.push_back(a.id);
      sweeps_.push_back({a.id, {a.cell}});
    }
    auto pos = std::lower_bound(agents_.begin(), agents_.end(), a.id, [](const Agent& x, int v) { return x.id < v; });
    agents_.insert(pos, std::move(a));
  }
  pending_ = std::move(still_pending);
  return placed;
}

void World::refresh_trends(std::span<const int> ids) {
  if (ids.empty()) return;
  HistorySnapshot snap;
  snap.cycle = cycle_;
  snap.step = step_;
  const auto h_obs = static_cast<std::size_t>(config_.h_obs);
  for (int id : ids) {
    const Agent* a = find_agent(id);
    AgentHistory h;
    h.agent_id = id;
    h.destination = a->destination;
    h.preferred_speed = a->preferred_speed;
    h.positions.assign(a->history.begin(), a->history.end());
    while (h.positions.size() < h_obs) h.positions.insert(h.positions.begin(), h.positions.front());
    snap.agents.push_back(std::move(h));
  }
  TrendMap trends = predictor_->predict(snap, env_, derive_seed(-1, kPredictSeed));
  ++cycle_;

  for (int id : ids) {
    const Agent* a = find_agent(id);
    auto it = trends.find(id);
    if (it == trends.end()) throw std::runtime_error("predictor returned no trend for agent " + std::to_string(id));
    it->second.validate(static_cast<std::size_t>(config_.t_p));
    auto nav = build_navigation(it->second, a->cell, a->destination, config_.field_params, env_,
                                derive_seed(id, kSampleSeed), derive_seed(id, kExpandSeed));
    auto existing = fields_.find(id);
    if (existing == fields_.end()) {
      FieldMatrix zero(env_.width(), env_.height(), FieldKind::pedestrian);
      FieldMatrix global = global_field(nav.matrix, obstacle_matrix_, zero);
      fields_.emplace(id, AgentFields{std::move(nav.direction), std::move(nav.matrix), std::move(zero), std::move(global)});
    } else {
      existing->second.direction = std::move(nav.direction);
      existing->second.navigation = std::move(nav.matrix);
    }
  }
}

void World::rebuild_pedestrian_fields() {
  const auto& fp = config_.field_params;
  for (auto& [id, f] : fields_)
    f.pedestrian = magnitude_matrix(pedestrian_field(sweeps_, id, fp.epsilon, fp.lambda_h, env_), FieldKind::pedestrian);
}

void World::rebuild_global_fields() {
  for (auto& [id, f] : fields_) f.global = global_field(f.navigation, obstacle_matrix_, f.pedestrian);
}

void World::step() {
  const auto started = std::chrono::steady_clock::now();
  ++step_;

  Occupancy occupancy(env_);
  for (const auto& a : agents_)
    if (a.state == AgentState::active) occupancy.claim(a.id, std::span<const GridCoord>(&a.cell, 1));

  std::vector<PedestrianSweep> sweeps;
  for (auto& a : agents_) {
    if (a.state != AgentState::active) continue;
    const auto& mg = fields_.at(a.id).global;
    const auto target = plan_step(a, mg, env_, occupancy);
    const GridCoord old_cell = a.cell;
    execute(a, target, config_.dt, env_);
    auto sweep = sweep_cells(a.id, old_cell, a.cell, env_);
    if (a.state == AgentState::arrived) {
      occupancy.release(a.id);
      arrival_step_[a.id] = step_;
      fields_.erase(a.id);
    } else {
      occupancy.claim(a.id, sweep.cells);
      sweeps.push_back(std::move(sweep));
    }
  }
  sweeps_ = std::move(sweeps);

  std::vector<int> refresh = activate_pending();
  if (step_ % config_.t_d == 0) {
    refresh.clear();
    for (const auto& a : agents_)
      if (a.state == AgentState::active) refresh.push_back(a.id);
  }
  refresh_trends(refresh);
  rebuild_pedestrian_fields();
  rebuild_global_fields();
  log_rows();

  wall_seconds_ += std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
}

// Active agents, plus agents whose arrival happened this step.
void World::log_rows() {
  for (const auto& a : agents_) {
    const bool arrived_now = a.state == AgentState::arrived && arrival_step_.at(a.id) == step_;
    if (a.state == AgentState::active || arrived_now)
      log_.push_back({step_, a.id, a.world_pos.x, a.world_pos.y, a.state});
  }
}

RunSummary World::run() {
  while (!finished() && step_ < config_.max_steps) step();
  return summarize();
}

RunSummary World::summarize() const {
  RunSummary s;
  s.steps = step_;
  s.wall_seconds = wall_seconds_;
  std::map<int, std::vector<WorldPoint>> paths;
  for (const auto& row : log_) paths[row.agent_id].push_back({row.x, row.y});
  for (const auto& a : agents_) {
    AgentSummary as;
    as.id = a.id;
    as.arrived = a.state == AgentState::arrived;
    if (auto it = arrival_step_.find(a.id); it != arrival_step_.end()) as.arrival_step = it->second;
    const auto& path = paths[a.id];
    if (path.size() >= 2) {
      const auto stats = travel_stats(path, config_.dt);
      as.distance = stats.distance;
      as.mean_speed = stats.mean_speed;
    }
    s.arrived += as.arrived ? 1 : 0;
    s.per_agent.push_back(as);
  }
  s.agents = static_cast<int>(agents_.size() + pending_.size());
  return s;
}

}  // namespace navfield
