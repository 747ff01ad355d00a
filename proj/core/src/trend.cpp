#include "navfield/trend.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "navfield/path_search.hpp"

namespace navfield {

void TrendDistribution::validate(std::size_t horizon) const {
  const std::string who = "trend for agent " + std::to_string(agent_id);
  if (steps.size() != horizon)
    throw std::invalid_argument(who + ": expected " + std::to_string(horizon) + " steps, got " +
                                std::to_string(steps.size()));
  for (std::size_t t = 0; t < steps.size(); ++t) {
    const auto& s = steps[t];
    const std::string at = who + " step " + std::to_string(t + 1);
    if (!std::isfinite(s.mu_x) || !std::isfinite(s.mu_y) || !std::isfinite(s.sigma_x) ||
        !std::isfinite(s.sigma_y) || !std::isfinite(s.rho))
      throw std::invalid_argument(at + ": non-finite parameter");
    if (!(s.sigma_x > 0.0) || !(s.sigma_y > 0.0)) throw std::invalid_argument(at + ": sigma must be > 0");
    if (!(std::abs(s.rho) < 1.0)) throw std::invalid_argument(at + ": |rho| must be < 1");
  }
}

void TrendLine::validate(const GridEnvironment& env) const {
  if (cells.empty()) throw std::invalid_argument("trend line is empty");
  for (std::size_t k = 0; k < cells.size(); ++k) {
    if (!env.is_free(cells[k])) throw std::invalid_argument("trend line crosses a non-free cell");
    if (k > 0 && !is_adjacent8(cells[k - 1], cells[k]))
      throw std::invalid_argument("trend line cells are not 8-adjacent");
  }
}

std::vector<WorldPoint> sample_trend_points(const TrendDistribution& dist, const GridEnvironment& env,
                                            std::uint64_t seed) {
  dist.validate(dist.steps.size());
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> unit(0.0, 1.0);
  const Rect b = env.bounds();

  std::vector<WorldPoint> points;
  points.reserve(dist.steps.size());
  for (const auto& s : dist.steps) {
    const double z1 = unit(rng);
    const double z2 = unit(rng);
    WorldPoint p{s.mu_x + s.sigma_x * z1,
                 s.mu_y + s.sigma_y * (s.rho * z1 + std::sqrt(1.0 - s.rho * s.rho) * z2)};
    if (p.x < b.xmin || p.x > b.xmax || p.y < b.ymin || p.y > b.ymax)
      p = grid_to_world(nearest_free_cell(p, env), env);
    points.push_back(p);
  }
  return points;
}

TrendLine interpolate_trend_line(std::span<const WorldPoint> points, GridCoord destination,
                                 const GridEnvironment& env) {
  if (!env.is_free(destination)) throw std::invalid_argument("interpolate_trend_line: destination is not free");

  std::vector<GridCoord> anchors;
  anchors.reserve(points.size() + 1);
  for (const auto& p : points) {
    GridCoord c;
    try {
      c = world_to_grid(p, env);
    } catch (const std::out_of_range&) {
      c = nearest_free_cell(p, env);
    }
    if (!env.is_free(c)) c = nearest_free_cell(p, env);
    if (anchors.empty() || anchors.back() != c) anchors.push_back(c);
  }
  if (anchors.empty() || anchors.back() != destination) anchors.push_back(destination);

  TrendLine line;
  line.cells.push_back(anchors.front());
  for (std::size_t k = 1; k < anchors.size(); ++k) {
    const GridPath leg = astar(env, anchors[k - 1], anchors[k]);
    line.cells.insert(line.cells.end(), leg.cells.begin() + 1, leg.cells.end());
  }
  return line;
}

}  // namespace navfield
