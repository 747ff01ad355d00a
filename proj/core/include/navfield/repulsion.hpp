#pragma once

#include <span>
#include <vector>

#include "navfield/grid.hpp"

namespace navfield {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

/// Per-cell repulsion vectors in cell units. Singular cells (the sources
/// themselves) have unbounded magnitude.
class VectorField {
 public:
  struct Entry {
    Vec2 v;
    bool singular = false;
  };

  VectorField(int width, int height) : width_(width), height_(height), entries_(static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {}

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  const Entry& at(GridCoord c) const { return entries_.at(index(c)); }
  Entry& at(GridCoord c) { return entries_.at(index(c)); }
  std::span<const Entry> entries() const noexcept { return entries_; }

 private:
  std::size_t index(GridCoord c) const {
    return static_cast<std::size_t>(c.j) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(c.i);
  }

  int width_;
  int height_;
  std::vector<Entry> entries_;
};

/// Cells an agent swept through during the last step.
struct PedestrianSweep {
  int agent_id = 0;
  std::vector<GridCoord> cells;
};

/// Repulsion around obstacle cells: for a free cell at center distance d from
/// the nearest obstacle center, `lambda_o * (delta - d) / d^2` times the unit
/// distance vector when d <= delta, zero beyond. Obstacle cells are singular.
VectorField obstacle_field(const GridEnvironment& env, double delta, double lambda_o);

/// Same kernel around the union of all sweeps except `exclude_agent`'s, with
/// range `epsilon` and strength `lambda_h`. Swept cells are singular.
VectorField pedestrian_field(std::span<const PedestrianSweep> sweeps, int exclude_agent, double epsilon,
                             double lambda_h, const GridEnvironment& env);

}  // namespace navfield
