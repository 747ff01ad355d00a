#include "navfield/direction_field.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace navfield {

double DirectionField::Entry::magnitude() const {
  if (kind == Kind::obstacle) return std::numeric_limits<double>::infinity();
  return std::hypot(static_cast<double>(direction.dx), static_cast<double>(direction.dy));
}

DirectionField::DirectionField(const GridEnvironment& env, TrendLine center, int radius)
    : width_(env.width()),
      height_(env.height()),
      center_(std::move(center)),
      radius_(radius),
      entries_(env.cell_count()) {
  for (std::size_t idx = 0; idx < entries_.size(); ++idx)
    if (env.passability()[idx] == kObstacleCell) entries_[idx].kind = Kind::obstacle;
}

std::map<GridCoord, CellOffset> raw_direction_vectors(const TrendLine& line) {
  std::map<GridCoord, CellOffset> raw;
  const auto& cells = line.cells;
  for (std::size_t k = 0; k < cells.size(); ++k) {
    raw[cells[k]] = (k + 1 < cells.size()) ? cells[k + 1] - cells[k] : CellOffset{0, 0};
  }
  return raw;
}

DirectionField expand_field(const std::map<GridCoord, CellOffset>& raw, const TrendLine& line, int r,
                            const GridEnvironment& env, std::uint64_t seed) {
  if (r < 0) throw std::invalid_argument("expand_field: radius must be non-negative");
  line.validate(env);
  DirectionField field(env, line, r);
  std::vector<char> marked(env.cell_count(), 0);
  for (const auto& [cell, dir] : raw) {
    if (!env.is_free(cell)) throw std::invalid_argument("expand_field: raw vector on a non-free cell");
    auto& e = field.at(cell);
    e.kind = DirectionField::Kind::vector;
    e.direction = dir;
    e.round = 0;
    marked[env.index(cell)] = 1;
  }

  std::mt19937_64 rng(seed);
  std::vector<std::size_t> frontier;
  std::vector<GridCoord> candidates;
  for (int round = 1; round <= r; ++round) {
    frontier.clear();
    for (std::size_t idx = 0; idx < env.cell_count(); ++idx) {
      if (marked[idx] || env.passability()[idx] != kFreeCell) continue;
      const GridCoord c = env.coord(idx);
      candidates.clear();
      for (const auto& d : kNeighborOffsets) {
        const GridCoord n = c + d;
        if (env.in_bounds(n) && marked[env.index(n)]) candidates.push_back(n);
      }
      if (candidates.empty()) continue;
      std::size_t pick = 0;
      if (candidates.size() > 1) {
        std::uniform_int_distribution<std::size_t> choose(0, candidates.size() - 1);
        pick = choose(rng);
      }
      auto& e = field.at(c);
      e.kind = DirectionField::Kind::vector;
      e.direction = candidates[pick] - c;
      e.round = round;
      frontier.push_back(idx);
    }
    if (frontier.empty()) break;
    for (auto idx : frontier) marked[idx] = 1;
  }
  return field;
}

}  // namespace navfield
