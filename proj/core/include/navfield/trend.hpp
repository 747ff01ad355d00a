#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "navfield/grid.hpp"

namespace navfield {

/// Bivariate Gaussian over one future position, meters.
struct TrendStep {
  double mu_x = 0.0;
  double mu_y = 0.0;
  double sigma_x = 1.0;
  double sigma_y = 1.0;
  double rho = 0.0;
};

/// Predicted movement trend of one agent: one Gaussian per future step.
struct TrendDistribution {
  int agent_id = 0;
  int made_at_step = 0;
  std::vector<TrendStep> steps;

  /// Throws std::invalid_argument unless steps.size() == horizon, every sigma
  /// is positive, |rho| < 1 and all values are finite.
  void validate(std::size_t horizon) const;
};

/// Ordered 8-adjacent free cells ending at the agent's destination.
struct TrendLine {
  std::vector<GridCoord> cells;

  GridCoord destination() const { return cells.back(); }
  /// Throws std::invalid_argument when the line is empty, leaves the free
  /// space, or has consecutive cells that are not 8-adjacent.
  void validate(const GridEnvironment& env) const;
};

/// Draws one point per step from N(mu, sigma, rho). Points outside the grid
/// are moved to the nearest free cell center. Deterministic for a given seed.
std::vector<WorldPoint> sample_trend_points(const TrendDistribution& dist, const GridEnvironment& env,
                                            std::uint64_t seed);

/// Maps points to cells (obstacle hits snap to the nearest free cell) and
/// stitches A* paths between consecutive cells and on to `destination`.
/// Propagates NoPathError.
TrendLine interpolate_trend_line(std::span<const WorldPoint> points, GridCoord destination,
                                 const GridEnvironment& env);

}  // namespace navfield
