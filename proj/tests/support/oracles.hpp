#pragma once

// Brute-force reference implementations used to check the optimized code.
// Kept deliberately naive; nothing here calls into the library's algorithms.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <random>
#include <utility>
#include <vector>

#include "navfield/grid.hpp"

namespace navfield::oracle {

inline GridEnvironment empty_env(int w, int h, double cs = 0.4) {
  return GridEnvironment(w, h, cs, {0.0, 0.0}, std::vector<std::uint8_t>(static_cast<std::size_t>(w * h), kFreeCell));
}

inline GridEnvironment with_obstacles(int w, int h, const std::vector<GridCoord>& blocked, double cs = 0.4) {
  std::vector<std::uint8_t> pass(static_cast<std::size_t>(w * h), kFreeCell);
  for (auto c : blocked) pass[static_cast<std::size_t>(c.j * w + c.i)] = kObstacleCell;
  return GridEnvironment(w, h, cs, {0.0, 0.0}, std::move(pass));
}

inline GridEnvironment random_env(int w, int h, double density, std::mt19937_64& rng) {
  std::bernoulli_distribution blocked(density);
  std::vector<std::uint8_t> pass(static_cast<std::size_t>(w * h));
  for (auto& p : pass) p = blocked(rng) ? kObstacleCell : kFreeCell;
  return GridEnvironment(w, h, 0.4, {0.0, 0.0}, std::move(pass));
}

inline std::vector<GridCoord> free_cells(const GridEnvironment& env) {
  std::vector<GridCoord> out;
  for (int j = 0; j < env.height(); ++j)
    for (int i = 0; i < env.width(); ++i)
      if (env.is_free({i, j})) out.push_back({i, j});
  return out;
}

/// Straight/diagonal step counts of a shortest 8-connected path, or nullopt.
/// Plain Dijkstra on long double keys; a + b*sqrt(2) is unique per (a, b), so
/// equal optimal values imply equal counts.
inline std::optional<std::pair<std::int64_t, std::int64_t>> dijkstra_counts(const GridEnvironment& env, GridCoord s,
                                                                             GridCoord g) {
  const long double r2 = std::sqrt(2.0L);
  const std::size_t n = env.cell_count();
  std::vector<long double> dist(n, std::numeric_limits<long double>::infinity());
  std::vector<std::pair<std::int64_t, std::int64_t>> counts(n, {0, 0});
  std::vector<bool> done(n, false);
  using Item = std::pair<long double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[env.index(s)] = 0;
  pq.push({0, env.index(s)});
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (done[u]) continue;
    done[u] = true;
    const GridCoord c = env.coord(u);
    for (int dx = -1; dx <= 1; ++dx)
      for (int dy = -1; dy <= 1; ++dy) {
        if (!dx && !dy) continue;
        const GridCoord m{c.i + dx, c.j + dy};
        if (!env.is_free(m)) continue;
        const bool diag = dx && dy;
        const long double nd = d + (diag ? r2 : 1.0L);
        const std::size_t v = env.index(m);
        if (nd < dist[v] - 1e-12L) {
          dist[v] = nd;
          counts[v] = {counts[u].first + (diag ? 0 : 1), counts[u].second + (diag ? 1 : 0)};
          pq.push({nd, v});
        }
      }
  }
  if (!done[env.index(g)]) return std::nullopt;
  return counts[env.index(g)];
}

/// Magnitude of the singular repulsion kernel for the nearest source, found
/// by scanning every source for every cell.
inline std::vector<double> kernel_magnitudes(const GridEnvironment& env, const std::vector<GridCoord>& sources,
                                             double range, double strength) {
  std::vector<double> out(env.cell_count(), 0.0);
  for (std::size_t k = 0; k < env.cell_count(); ++k) {
    const GridCoord c = env.coord(k);
    double best = std::numeric_limits<double>::infinity();
    for (auto s : sources) best = std::min(best, std::hypot(double(c.i - s.i), double(c.j - s.j)));
    if (best == 0.0)
      out[k] = std::numeric_limits<double>::infinity();
    else if (best <= range)
      out[k] = strength * (range - best) / best;
  }
  return out;
}

/// Cells reachable from `seeds` through free 8-neighbors in at most `depth`
/// hops, with their hop count; -1 elsewhere.
inline std::vector<int> flood_fill(const GridEnvironment& env, const std::vector<GridCoord>& seeds, int depth) {
  std::vector<int> hops(env.cell_count(), -1);
  std::queue<GridCoord> q;
  for (auto s : seeds)
    if (hops[env.index(s)] < 0) {
      hops[env.index(s)] = 0;
      q.push(s);
    }
  while (!q.empty()) {
    const GridCoord c = q.front();
    q.pop();
    if (hops[env.index(c)] == depth) continue;
    for (int dx = -1; dx <= 1; ++dx)
      for (int dy = -1; dy <= 1; ++dy) {
        const GridCoord m{c.i + dx, c.j + dy};
        if (!env.is_free(m) || hops[env.index(m)] >= 0) continue;
        hops[env.index(m)] = hops[env.index(c)] + 1;
        q.push(m);
      }
  }
  return hops;
}

/// Cells whose closed unit square meets the segment between two cell centers
/// (supercover rasterization), via Liang-Barsky clipping per candidate cell.
inline std::vector<GridCoord> supercover(GridCoord a, GridCoord b) {
  std::vector<GridCoord> out;
  const double x0 = a.i + 0.5, y0 = a.j + 0.5, dx = b.i - a.i, dy = b.j - a.j;
  for (int i = std::min(a.i, b.i) - 1; i <= std::max(a.i, b.i) + 1; ++i)
    for (int j = std::min(a.j, b.j) - 1; j <= std::max(a.j, b.j) + 1; ++j) {
      double t0 = 0.0, t1 = 1.0;
      bool hit = true;
      const double p[4] = {-dx, dx, -dy, dy};
      const double q[4] = {x0 - i, i + 1 - x0, y0 - j, j + 1 - y0};
      for (int k = 0; k < 4 && hit; ++k) {
        if (p[k] == 0.0) {
          if (q[k] < 0) hit = false;
        } else {
          const double t = q[k] / p[k];
          if (p[k] < 0) t0 = std::max(t0, t);
          else t1 = std::min(t1, t);
        }
      }
      if (hit && t0 <= t1) out.push_back({i, j});
    }
  return out;
}

}  // namespace navfield::oracle
