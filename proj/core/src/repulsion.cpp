#include "navfield/repulsion.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace navfield {

namespace {

// Nearest-source scan restricted to the kernel's support window. Ties go to
// the first source in row-major window order.
VectorField repulsion_kernel(const GridEnvironment& env, const std::vector<char>& is_source, double range,
                             double strength, bool free_cells_only) {
  if (!(range >= 1.0)) throw std::invalid_argument("repulsion field: range must be at least one cell");
  if (!(strength > 0.0)) throw std::invalid_argument("repulsion field: strength must be positive");

  VectorField field(env.width(), env.height());
  const int reach = static_cast<int>(std::floor(range));
  for (std::size_t idx = 0; idx < env.cell_count(); ++idx) {
    const GridCoord c = env.coord(idx);
    auto& out = field.at(c);
    if (is_source[idx]) {
      out.singular = true;
      continue;
    }
    if (free_cells_only && env.passability()[idx] != kFreeCell) continue;

    double best = std::numeric_limits<double>::infinity();
    GridCoord nearest{};
    for (int dj = -reach; dj <= reach; ++dj) {
      for (int di = -reach; di <= reach; ++di) {
        const GridCoord s{c.i + di, c.j + dj};
        if (!env.in_bounds(s) || !is_source[env.index(s)]) continue;
        const double d2 = static_cast<double>(di * di + dj * dj);
        if (d2 < best) {
          best = d2;
          nearest = s;
        }
      }
    }
    const double d = std::sqrt(best);
    if (!(d <= range)) continue;
    const double scale = strength * (range - d) / (d * d);
    out.v = {scale * (c.i - nearest.i), scale * (c.j - nearest.j)};
  }
  return field;
}

}  // namespace

VectorField obstacle_field(const GridEnvironment& env, double delta, double lambda_o) {
  std::vector<char> sources(env.cell_count(), 0);
  for (std::size_t idx = 0; idx < env.cell_count(); ++idx)
    sources[idx] = env.passability()[idx] == kObstacleCell;
  return repulsion_kernel(env, sources, delta, lambda_o, true);
}

VectorField pedestrian_field(std::span<const PedestrianSweep> sweeps, int exclude_agent, double epsilon,
                             double lambda_h, const GridEnvironment& env) {
  std::vector<char> sources(env.cell_count(), 0);
  for (const auto& sweep : sweeps) {
    if (sweep.agent_id == exclude_agent) continue;
    for (const auto& c : sweep.cells)
      if (env.in_bounds(c)) sources[env.index(c)] = 1;
  }
  return repulsion_kernel(env, sources, epsilon, lambda_h, false);
}

}  // namespace navfield
