#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace navfield {

/// Column/row index of a grid cell. `i` runs along x, `j` along y.
struct GridCoord {
  int i = 0;
  int j = 0;

  friend constexpr auto operator<=>(const GridCoord&, const GridCoord&) = default;
};

/// Integer step between two cells.
struct CellOffset {
  int dx = 0;
  int dy = 0;

  friend constexpr bool operator==(const CellOffset&, const CellOffset&) = default;
};

constexpr GridCoord operator+(GridCoord c, CellOffset d) { return {c.i + d.dx, c.j + d.dy}; }
constexpr CellOffset operator-(GridCoord a, GridCoord b) { return {a.i - b.i, a.j - b.j}; }

/// Position in meters.
struct WorldPoint {
  double x = 0.0;
  double y = 0.0;

  friend constexpr bool operator==(const WorldPoint&, const WorldPoint&) = default;
};

/// Axis-aligned rectangle in meters.
struct Rect {
  double xmin = 0.0;
  double ymin = 0.0;
  double xmax = 0.0;
  double ymax = 0.0;
};

// Neighbour visiting order. Everything downstream that breaks ties by
// neighbour order relies on this exact sequence.
inline constexpr std::array<CellOffset, 8> kNeighborOffsets{{
    {-1, -1}, {-1, 0}, {-1, 1}, {0, -1}, {0, 1}, {1, -1}, {1, 0}, {1, 1}}};

inline constexpr std::uint8_t kObstacleCell = 0;
inline constexpr std::uint8_t kFreeCell = 1;

/// Regular square-cell discretization of a rectangular world.
///
/// Cell (i, j) covers [origin.x + i*cell_size, origin.x + (i+1)*cell_size) along
/// x and the same along y. Passability is stored row-major (j outer).
/// Immutable after construction.
class GridEnvironment {
 public:
  GridEnvironment(int width_cells, int height_cells, double cell_size, WorldPoint origin,
                  std::vector<std::uint8_t> passability);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  double cell_size() const noexcept { return cell_size_; }
  WorldPoint origin() const noexcept { return origin_; }
  std::size_t cell_count() const noexcept { return passability_.size(); }
  std::size_t free_count() const noexcept { return free_count_; }
  Rect bounds() const noexcept;

  bool in_bounds(GridCoord c) const noexcept {
    return c.i >= 0 && c.j >= 0 && c.i < width_ && c.j < height_;
  }
  /// False for out-of-bounds cells.
  bool is_free(GridCoord c) const noexcept {
    return in_bounds(c) && passability_[index(c)] == kFreeCell;
  }
  std::size_t index(GridCoord c) const noexcept {
    return static_cast<std::size_t>(c.j) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(c.i);
  }
  GridCoord coord(std::size_t idx) const noexcept {
    return {static_cast<int>(idx % static_cast<std::size_t>(width_)),
            static_cast<int>(idx / static_cast<std::size_t>(width_))};
  }
  std::span<const std::uint8_t> passability() const noexcept { return passability_; }

 private:
  int width_;
  int height_;
  double cell_size_;
  WorldPoint origin_;
  std::vector<std::uint8_t> passability_;
  std::size_t free_count_ = 0;
};

/// Rasterizes obstacle rectangles onto a grid covering `bounds`. A cell is an
/// obstacle iff its open interior overlaps an obstacle's open interior.
/// Throws std::invalid_argument for a non-positive cell size or bounds
/// smaller than one cell.
GridEnvironment discretize(std::span<const Rect> obstacles, const Rect& bounds, double cell_size);

/// Floor-division mapping. Points on the upper bounds edge fall into the last
/// row/column. Throws std::out_of_range outside the grid.
GridCoord world_to_grid(WorldPoint p, const GridEnvironment& env);

/// Cell center. Throws std::out_of_range for cells outside the grid.
WorldPoint grid_to_world(GridCoord c, const GridEnvironment& env);

/// Free in-bounds neighbours of a free cell, in kNeighborOffsets order.
/// Throws std::invalid_argument when `c` is an obstacle or out of bounds.
std::vector<GridCoord> neighbors8(GridCoord c, const GridEnvironment& env);

/// Free cell whose center is closest to `p` (Euclidean). Ties go to the lowest
/// row-major index. Throws std::invalid_argument if the grid has no free cell.
GridCoord nearest_free_cell(WorldPoint p, const GridEnvironment& env);

constexpr int chebyshev_distance(GridCoord a, GridCoord b) {
  const int dx = a.i > b.i ? a.i - b.i : b.i - a.i;
  const int dy = a.j > b.j ? a.j - b.j : b.j - a.j;
  return dx > dy ? dx : dy;
}

constexpr bool is_adjacent8(GridCoord a, GridCoord b) { return chebyshev_distance(a, b) == 1; }

constexpr bool is_diagonal_step(GridCoord a, GridCoord b) {
  return is_adjacent8(a, b) && a.i != b.i && a.j != b.j;
}

}  // namespace navfield
