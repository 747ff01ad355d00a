#pragma once

#include <map>
#include <span>
#include <vector>

#include "navfield/grid.hpp"

namespace navfield {

struct TrackPoint {
  int step = 0;
  WorldPoint p;
};

/// Trajectories keyed by agent id; points in ascending step order.
using TrackSet = std::map<int, std::vector<TrackPoint>>;

/// Average displacement error in meters.
///
/// For each agent present in both sets, the first `horizon` steps the two
/// tracks share are compared. Each agent contributes the mean distance over
/// its overlap; the result is the mean over agents. Throws UndefinedMetric
/// when no agent has any overlap.
double ade(const TrackSet& sim, const TrackSet& real, int horizon);

/// Visit counts per grid cell, row-major.
class Heatmap {
 public:
  Heatmap(int width, int height) : width_(width), height_(height), counts_(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), 0) {}

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::span<const long> counts() const noexcept { return counts_; }
  long at(GridCoord c) const { return counts_.at(index(c)); }
  void add(GridCoord c) { ++counts_.at(index(c)); }
  long total() const;

 private:
  std::size_t index(GridCoord c) const {
    return static_cast<std::size_t>(c.j) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(c.i);
  }

  int width_;
  int height_;
  std::vector<long> counts_;
};

/// Throws std::out_of_range for positions outside the grid.
/// Positions outside the scene bounds are not counted.
Heatmap heatmap(std::span<const WorldPoint> positions, const GridEnvironment& env);
Heatmap heatmap(const TrackSet& tracks, const GridEnvironment& env);

/// Banded Jaccard similarity.
///
/// Non-zero cells of each map are split into `levels` bands by rank among
/// that map's non-zero counts (equal counts share a band). Band k of one map
/// is compared with band k of the other by |A & B| / |A | B| (1 when both are
/// empty); the result is the mean over bands.
double jaccard_similarity(const Heatmap& a, const Heatmap& b, int levels = 3);

/// Band (0 for zero cells, else 1..levels) of every cell of `h`.
std::vector<int> heatmap_levels(const Heatmap& h, int levels);

struct DensityPoint {
  double x = 0.0;
  double density = 0.0;
};

/// Gaussian kernel density on `grid_points` evenly spaced points spanning
/// [min - 3h, max + 3h].
std::vector<DensityPoint> kde_export(std::span<const double> samples, double bandwidth, int grid_points = 256);

/// 1.06 * sd * n^(-1/5); falls back to 1.0 for fewer than two distinct samples.
double silverman_bandwidth(std::span<const double> samples);

struct TravelStats {
  double distance = 0.0;    // meters
  double mean_speed = 0.0;  // m/s
};

/// Polyline length and length / ((n - 1) * dt). Requires at least two points.
TravelStats travel_stats(std::span<const WorldPoint> points, double dt);

}  // namespace navfield
