#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <string_view>
#include <vector>

#include "navfield/direction_field.hpp"
#include "navfield/grid.hpp"
#include "navfield/repulsion.hpp"

namespace navfield {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Tunables of the potential fields. Ranges and the domain radius are in cells.
struct FieldParams {
  double delta = 1.0;     // obstacle-field range
  double epsilon = 1.0;   // pedestrian-field range
  double lambda_o = 1.0;  // obstacle strength
  double lambda_h = 1.0;  // pedestrian strength
  int r = 4;              // navigation-field domain radius
  double l = 1.0;         // gradient scale between adjacent cells
  double v0 = 0.0;        // value at the destination
  double kappa = 2.0;     // per-cell weight outside the navigation domain

  /// Throws std::invalid_argument on out-of-range values.
  void validate() const;
};

enum class FieldKind { navigation, obstacle, pedestrian, global };

std::string_view to_string(FieldKind kind);

/// Scalar potential per cell, row-major. Values are finite and >= 0, or +inf.
class FieldMatrix {
 public:
  FieldMatrix(int width, int height, FieldKind kind, double fill = 0.0)
      : width_(width), height_(height), kind_(kind),
        values_(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill) {}

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  FieldKind kind() const noexcept { return kind_; }
  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }

  double at(GridCoord c) const { return values_.at(index(c)); }
  double& at(GridCoord c) { return values_.at(index(c)); }

 private:
  std::size_t index(GridCoord c) const {
    return static_cast<std::size_t>(c.j) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(c.i);
  }

  int width_;
  int height_;
  FieldKind kind_;
  std::vector<double> values_;
};

/// Navigation potential M_F.
///
/// A cell inside the field domain is worth the sum of `l * |f|` over the
/// direction chain that leads from it to the destination, plus `v0`. The
/// chain always terminates: expanded cells point at cells from an earlier
/// round and line cells point forward along the line. Free cells outside the
/// domain are filled by a Dijkstra sweep from the domain where entering a cell
/// costs `l * kappa`. Obstacles and free cells cut off from the destination
/// are +inf.
///
/// Throws std::invalid_argument when `destination` is not free or is not the
/// end of the field's trend line.
FieldMatrix field_to_matrix(const DirectionField& field, GridCoord destination, const FieldParams& params,
                            const GridEnvironment& env);

/// Per-cell Euclidean norm; singular entries become +inf.
FieldMatrix magnitude_matrix(const VectorField& vf, FieldKind kind);

/// M_F + M_C + M_I with +inf absorbing. Throws std::invalid_argument on a
/// dimension mismatch.
FieldMatrix global_field(const FieldMatrix& mf, const FieldMatrix& mc, const FieldMatrix& mi);

}  // namespace navfield
