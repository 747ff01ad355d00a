#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "navfield/grid.hpp"
#include "navfield/trend.hpp"

namespace navfield {

/// Per-cell guidance direction for one agent.
///
/// Cells on the trend line carry the raw line directions (round 0). Cells
/// reached by the k-th expansion round carry a unit step toward an adjacent
/// cell marked in an earlier round (round k). Obstacles carry the obstacle
/// mark; everything else lies outside the field domain.
class DirectionField {
 public:
  enum class Kind : std::uint8_t { outside, vector, obstacle };

  struct Entry {
    Kind kind = Kind::outside;
    CellOffset direction;
    int round = -1;

    double magnitude() const;
  };

  DirectionField(const GridEnvironment& env, TrendLine center, int radius);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  const TrendLine& center() const noexcept { return center_; }
  int radius() const noexcept { return radius_; }

  const Entry& at(GridCoord c) const { return entries_.at(index(c)); }
  Entry& at(GridCoord c) { return entries_.at(index(c)); }
  bool in_domain(GridCoord c) const { return at(c).kind == Kind::vector; }

 private:
  std::size_t index(GridCoord c) const {
    return static_cast<std::size_t>(c.j) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(c.i);
  }

  int width_;
  int height_;
  TrendLine center_;
  int radius_;
  std::vector<Entry> entries_;
};

/// Direction from each line cell to its successor; the last cell gets (0,0).
/// A cell visited more than once keeps the direction of its last visit.
std::map<GridCoord, CellOffset> raw_direction_vectors(const TrendLine& line);

/// Grows the field `r` rounds outward from the line. Each round, every
/// unmarked free cell touching a marked cell picks one of its marked
/// neighbours uniformly at random (seeded) and points at it.
DirectionField expand_field(const std::map<GridCoord, CellOffset>& raw, const TrendLine& line, int r,
                            const GridEnvironment& env, std::uint64_t seed);

}  // namespace navfield
