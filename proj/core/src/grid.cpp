#include "navfield/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace navfield {

namespace {

// Relative slack for floating-point comparisons against cell edges.
constexpr double kEdgeTolerance = 1e-9;

int cells_spanning(double extent, double cell_size) {
  return static_cast<int>(std::ceil(extent / cell_size - kEdgeTolerance));
}

int axis_index(double value, double origin, double cell_size, int count) {
  if (!std::isfinite(value)) throw std::out_of_range("world_to_grid: non-finite coordinate");
  const double rel = (value - origin) / cell_size;
  if (rel < -kEdgeTolerance) throw std::out_of_range("world_to_grid: point below grid origin");
  auto idx = static_cast<long long>(std::floor(rel));
  if (idx < 0) idx = 0;
  if (idx == count && rel <= count + kEdgeTolerance) idx = count - 1;
  if (idx >= count) throw std::out_of_range("world_to_grid: point beyond grid extent");
  return static_cast<int>(idx);
}

}  // namespace

GridEnvironment::GridEnvironment(int width_cells, int height_cells, double cell_size,
                                 WorldPoint origin, std::vector<std::uint8_t> passability)
    : width_(width_cells),
      height_(height_cells),
      cell_size_(cell_size),
      origin_(origin),
      passability_(std::move(passability)) {
  if (width_ < 1 || height_ < 1)
    throw std::invalid_argument("GridEnvironment: grid must have at least one cell per axis");
  if (!(cell_size_ > 0.0) || !std::isfinite(cell_size_))
    throw std::invalid_argument("GridEnvironment: cell_size must be positive");
  if (!std::isfinite(origin_.x) || !std::isfinite(origin_.y))
    throw std::invalid_argument("GridEnvironment: origin must be finite");
  if (passability_.size() != static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_))
    throw std::invalid_argument("GridEnvironment: passability size does not match dimensions");
  for (auto v : passability_) {
    if (v != kObstacleCell && v != kFreeCell)
      throw std::invalid_argument("GridEnvironment: passability entries must be 0 or 1");
    free_count_ += v;
  }
}

Rect GridEnvironment::bounds() const noexcept {
  return {origin_.x, origin_.y, origin_.x + width_ * cell_size_, origin_.y + height_ * cell_size_};
}

GridEnvironment discretize(std::span<const Rect> obstacles, const Rect& bounds, double cell_size) {
  if (!(cell_size > 0.0) || !std::isfinite(cell_size))
    throw std::invalid_argument("discretize: cell_size must be positive");
  const double extent_x = bounds.xmax - bounds.xmin;
  const double extent_y = bounds.ymax - bounds.ymin;
  if (!std::isfinite(extent_x) || !std::isfinite(extent_y) ||
      extent_x < cell_size * (1.0 - kEdgeTolerance) ||
      extent_y < cell_size * (1.0 - kEdgeTolerance))
    throw std::invalid_argument("discretize: bounds smaller than one cell");

  const int width = cells_spanning(extent_x, cell_size);
  const int height = cells_spanning(extent_y, cell_size);
  std::vector<std::uint8_t> pass(static_cast<std::size_t>(width) * static_cast<std::size_t>(height),
                                 kFreeCell);
  const double eps = cell_size * kEdgeTolerance;

  for (const Rect& r : obstacles) {
    if (!(r.xmax > r.xmin) || !(r.ymax > r.ymin)) continue;  // no interior
    // Candidate index window, then the exact open-interior overlap test.
    const int i0 = std::max(0, static_cast<int>(std::floor((r.xmin - bounds.xmin) / cell_size)) - 1);
    const int i1 = std::min(width - 1, static_cast<int>(std::floor((r.xmax - bounds.xmin) / cell_size)) + 1);
    const int j0 = std::max(0, static_cast<int>(std::floor((r.ymin - bounds.ymin) / cell_size)) - 1);
    const int j1 = std::min(height - 1, static_cast<int>(std::floor((r.ymax - bounds.ymin) / cell_size)) + 1);
    for (int j = j0; j <= j1; ++j) {
      const double cy0 = bounds.ymin + j * cell_size;
      const double cy1 = cy0 + cell_size;
      if (!(cy0 < r.ymax - eps && r.ymin + eps < cy1)) continue;
      for (int i = i0; i <= i1; ++i) {
        const double cx0 = bounds.xmin + i * cell_size;
        const double cx1 = cx0 + cell_size;
        if (cx0 < r.xmax - eps && r.xmin + eps < cx1)
          pass[static_cast<std::size_t>(j) * static_cast<std::size_t>(width) +
               static_cast<std::size_t>(i)] = kObstacleCell;
      }
    }
  }
  return GridEnvironment(width, height, cell_size, {bounds.xmin, bounds.ymin}, std::move(pass));
}

GridCoord world_to_grid(WorldPoint p, const GridEnvironment& env) {
  return {axis_index(p.x, env.origin().x, env.cell_size(), env.width()),
          axis_index(p.y, env.origin().y, env.cell_size(), env.height())};
}

WorldPoint grid_to_world(GridCoord c, const GridEnvironment& env) {
  if (!env.in_bounds(c))
    throw std::out_of_range("grid_to_world: cell (" + std::to_string(c.i) + "," +
                            std::to_string(c.j) + ") outside grid");
  return {env.origin().x + (c.i + 0.5) * env.cell_size(),
          env.origin().y + (c.j + 0.5) * env.cell_size()};
}

std::vector<GridCoord> neighbors8(GridCoord c, const GridEnvironment& env) {
  if (!env.is_free(c)) throw std::invalid_argument("neighbors8: cell is not a free in-bounds cell");
  std::vector<GridCoord> out;
  out.reserve(8);
  for (const auto& d : kNeighborOffsets) {
    const GridCoord n = c + d;
    if (env.is_free(n)) out.push_back(n);
  }
  return out;
}

GridCoord nearest_free_cell(WorldPoint p, const GridEnvironment& env) {
  double best = std::numeric_limits<double>::infinity();
  std::size_t best_idx = env.cell_count();
  const auto pass = env.passability();
  for (std::size_t idx = 0; idx < pass.size(); ++idx) {
    if (pass[idx] != kFreeCell) continue;
    const WorldPoint c = grid_to_world(env.coord(idx), env);
    const double d2 = (c.x - p.x) * (c.x - p.x) + (c.y - p.y) * (c.y - p.y);
    if (d2 < best) {
      best = d2;
      best_idx = idx;
    }
  }
  if (best_idx == env.cell_count()) throw std::invalid_argument("nearest_free_cell: grid has no free cell");
  return env.coord(best_idx);
}

}  // namespace navfield
