#include "navfield/field_matrix.hpp"

#include <functional>
#include <queue>
#include <stdexcept>
#include <utility>

namespace navfield {

void FieldParams::validate() const {
  if (!(delta >= 1.0)) throw std::invalid_argument("field params: delta must be >= 1 cell");
  if (!(epsilon >= 1.0)) throw std::invalid_argument("field params: epsilon must be >= 1 cell");
  if (!(lambda_o > 0.0)) throw std::invalid_argument("field params: lambda_o must be > 0");
  if (!(lambda_h > 0.0)) throw std::invalid_argument("field params: lambda_h must be > 0");
  if (r < 1) throw std::invalid_argument("field params: r must be >= 1 cell");
  if (!(l > 0.0) || !std::isfinite(l)) throw std::invalid_argument("field params: l must be > 0");
  if (!(v0 >= 0.0) || !std::isfinite(v0)) throw std::invalid_argument("field params: v0 must be finite and >= 0");
  if (!(kappa > 0.0) || !std::isfinite(kappa)) throw std::invalid_argument("field params: kappa must be > 0");
}

std::string_view to_string(FieldKind kind) {
  switch (kind) {
    case FieldKind::navigation: return "M_F";
    case FieldKind::obstacle: return "M_C";
    case FieldKind::pedestrian: return "M_I";
    case FieldKind::global: return "M_G";
  }
  return "?";
}

FieldMatrix field_to_matrix(const DirectionField& field, GridCoord destination, const FieldParams& params,
                            const GridEnvironment& env) {
  if (!env.is_free(destination)) throw std::invalid_argument("field_to_matrix: destination is not free");
  if (field.width() != env.width() || field.height() != env.height())
    throw std::invalid_argument("field_to_matrix: field does not match the grid");
  if (field.center().cells.empty() || field.center().destination() != destination)
    throw std::invalid_argument("field_to_matrix: trend line does not end at the destination");

  const std::size_t n = env.cell_count();
  FieldMatrix out(env.width(), env.height(), FieldKind::navigation, kInfinity);
  out.at(destination) = params.v0;

  // Chain sums over the domain, resolved iteratively with an explicit stack.
  enum : char { kPending = 0, kVisiting = 1, kDone = 2 };
  std::vector<char> state(n, kPending);
  state[env.index(destination)] = kDone;
  std::vector<GridCoord> stack;
  for (std::size_t idx = 0; idx < n; ++idx) {
    const GridCoord start = env.coord(idx);
    if (state[idx] != kPending || !field.in_domain(start)) continue;
    stack.push_back(start);
    while (!stack.empty()) {
      const GridCoord c = stack.back();
      const auto& e = field.at(c);
      const std::size_t ci = env.index(c);
      if (e.direction == CellOffset{0, 0})
        throw std::invalid_argument("field_to_matrix: direction chain stops before the destination");
      const GridCoord next = c + e.direction;
      if (!env.is_free(next) || !field.in_domain(next))
        throw std::invalid_argument("field_to_matrix: direction chain leaves the field domain");
      const std::size_t ni = env.index(next);
      if (state[ni] == kDone) {
        out.at(c) = out.at(next) + params.l * e.magnitude();
        state[ci] = kDone;
        stack.pop_back();
      } else if (state[ni] == kVisiting) {
        throw std::invalid_argument("field_to_matrix: direction chain contains a cycle");
      } else {
        state[ci] = kVisiting;
        stack.push_back(next);
      }
    }
  }

  // Out-of-domain extension. Entering a cell costs l * kappa regardless of
  // direction, so plain Dijkstra over the cell weights suffices.
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> open;
  for (std::size_t idx = 0; idx < n; ++idx)
    if (state[idx] == kDone) open.push({out.values()[idx], idx});
  const double step_weight = params.l * params.kappa;
  while (!open.empty()) {
    const auto [value, idx] = open.top();
    open.pop();
    if (value > out.values()[idx]) continue;
    const GridCoord c = env.coord(idx);
    for (const auto& d : kNeighborOffsets) {
      const GridCoord nb = c + d;
      if (!env.is_free(nb)) continue;
      const std::size_t ni = env.index(nb);
      if (state[ni] == kDone) continue;
      const double candidate = value + step_weight;
      if (candidate < out.values()[ni]) {
        out.values()[ni] = candidate;
        open.push({candidate, ni});
      }
    }
  }
  return out;
}

FieldMatrix magnitude_matrix(const VectorField& vf, FieldKind kind) {
  FieldMatrix out(vf.width(), vf.height(), kind);
  const auto entries = vf.entries();
  auto values = out.values();
  for (std::size_t idx = 0; idx < entries.size(); ++idx)
    values[idx] = entries[idx].singular ? kInfinity : std::hypot(entries[idx].v.x, entries[idx].v.y);
  return out;
}

FieldMatrix global_field(const FieldMatrix& mf, const FieldMatrix& mc, const FieldMatrix& mi) {
  if (mf.width() != mc.width() || mf.width() != mi.width() || mf.height() != mc.height() ||
      mf.height() != mi.height())
    throw std::invalid_argument("global_field: matrix dimensions differ");
  FieldMatrix out(mf.width(), mf.height(), FieldKind::global);
  auto values = out.values();
  const auto f = mf.values();
  const auto c = mc.values();
  const auto i = mi.values();
  for (std::size_t idx = 0; idx < values.size(); ++idx) values[idx] = f[idx] + c[idx] + i[idx];
  return out;
}

}  // namespace navfield
