#pragma once

#include <compare>
#include <cstdint>
#include <vector>

#include "navfield/grid.hpp"

namespace navfield {

/// Exact 8-connected path cost `straight + diagonal * sqrt(2)`.
///
/// Ordering is computed in integer arithmetic, so costs of equal real value
/// compare equal regardless of summation order. Since sqrt(2) is irrational,
/// two costs are equal iff both counts match.
class PathCost {
 public:
  constexpr PathCost() = default;
  constexpr PathCost(std::int64_t straight, std::int64_t diagonal)
      : straight_(straight), diagonal_(diagonal) {}

  static constexpr PathCost step(CellOffset d) {
    return (d.dx != 0 && d.dy != 0) ? PathCost{0, 1} : PathCost{1, 0};
  }
  /// Admissible and consistent lower bound between two cells.
  static constexpr PathCost octile(GridCoord a, GridCoord b) {
    const std::int64_t dx = a.i > b.i ? a.i - b.i : b.i - a.i;
    const std::int64_t dy = a.j > b.j ? a.j - b.j : b.j - a.j;
    const std::int64_t lo = dx < dy ? dx : dy;
    const std::int64_t hi = dx < dy ? dy : dx;
    return {hi - lo, lo};
  }

  constexpr std::int64_t straight() const noexcept { return straight_; }
  constexpr std::int64_t diagonal() const noexcept { return diagonal_; }
  double value() const noexcept;

  friend constexpr PathCost operator+(PathCost a, PathCost b) {
    return {a.straight_ + b.straight_, a.diagonal_ + b.diagonal_};
  }
  friend constexpr bool operator==(PathCost, PathCost) = default;
  friend constexpr std::strong_ordering operator<=>(PathCost a, PathCost b) {
    // sign of (p - q*sqrt2) with p = a.s - b.s, q = b.d - a.d
    const std::int64_t p = a.straight_ - b.straight_;
    const std::int64_t q = b.diagonal_ - a.diagonal_;
    if (q == 0) return p <=> 0;
    if (p >= 0 && q < 0) return std::strong_ordering::greater;
    if (p <= 0 && q > 0) return std::strong_ordering::less;
    if (p > 0) return (p * p) <=> (2 * q * q);
    return (2 * q * q) <=> (p * p);
  }

 private:
  std::int64_t straight_ = 0;
  std::int64_t diagonal_ = 0;
};

struct GridPath {
  std::vector<GridCoord> cells;  // start ... goal inclusive
  PathCost cost;
};

/// Minimal-cost 8-connected path with unit orthogonal and sqrt(2) diagonal
/// steps, guided by the octile heuristic. Among equal priorities the earlier
/// insertion wins; insertion follows kNeighborOffsets order.
///
/// Throws std::invalid_argument when an endpoint is not a free cell and
/// NoPathError when the goal is unreachable.
GridPath astar(const GridEnvironment& env, GridCoord start, GridCoord goal);

}  // namespace navfield
