#include "navfield/path_search.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>

#include "navfield/errors.hpp"

namespace navfield {

double PathCost::value() const noexcept {
  return static_cast<double>(straight_) + static_cast<double>(diagonal_) * std::numbers::sqrt2;
}

namespace {

struct OpenEntry {
  PathCost f;
  std::uint64_t seq;
  std::size_t idx;
};

struct LaterFirst {
  bool operator()(const OpenEntry& a, const OpenEntry& b) const {
    if (a.f != b.f) return a.f > b.f;
    return a.seq > b.seq;
  }
};

std::string describe(GridCoord c) { return "(" + std::to_string(c.i) + "," + std::to_string(c.j) + ")"; }

}  // namespace

GridPath astar(const GridEnvironment& env, GridCoord start, GridCoord goal) {
  if (!env.is_free(start)) throw std::invalid_argument("astar: start " + describe(start) + " is not free");
  if (!env.is_free(goal)) throw std::invalid_argument("astar: goal " + describe(goal) + " is not free");

  const std::size_t n = env.cell_count();
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::optional<PathCost>> g(n);
  std::vector<std::size_t> parent(n, kNone);
  std::vector<char> closed(n, 0);
  std::priority_queue<OpenEntry, std::vector<OpenEntry>, LaterFirst> open;
  std::uint64_t seq = 0;

  const std::size_t start_idx = env.index(start);
  const std::size_t goal_idx = env.index(goal);
  g[start_idx] = PathCost{};
  open.push({PathCost::octile(start, goal), seq++, start_idx});

  while (!open.empty()) {
    const OpenEntry top = open.top();
    open.pop();
    if (closed[top.idx]) continue;
    closed[top.idx] = 1;

    if (top.idx == goal_idx) {
      GridPath path;
      path.cost = *g[goal_idx];
      for (std::size_t at = goal_idx; at != kNone; at = parent[at]) path.cells.push_back(env.coord(at));
      std::reverse(path.cells.begin(), path.cells.end());
      return path;
    }

    const GridCoord here = env.coord(top.idx);
    for (const auto& d : kNeighborOffsets) {
      const GridCoord next = here + d;
      if (!env.is_free(next)) continue;
      const std::size_t ni = env.index(next);
      if (closed[ni]) continue;
      const PathCost candidate = *g[top.idx] + PathCost::step(d);
      if (!g[ni] || candidate < *g[ni]) {
        g[ni] = candidate;
        parent[ni] = top.idx;
        open.push({candidate + PathCost::octile(next, goal), seq++, ni});
      }
    }
  }
  throw NoPathError("astar: no path from " + describe(start) + " to " + describe(goal));
}

}  // namespace navfield
