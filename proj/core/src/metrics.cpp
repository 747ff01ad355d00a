#include "navfield/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "navfield/errors.hpp"

namespace navfield {

double ade(const TrackSet& sim, const TrackSet& real, int horizon) {
  if (horizon < 1) throw std::invalid_argument("ade: horizon must be >= 1");
  double sum_over_agents = 0.0;
  int agents = 0;
  for (const auto& [id, sim_track] : sim) {
    auto it = real.find(id);
    if (it == real.end()) continue;
    const auto& real_track = it->second;
    double err = 0.0;
    int overlap = 0;
    auto a = sim_track.begin();
    auto b = real_track.begin();
    while (a != sim_track.end() && b != real_track.end() && overlap < horizon) {
      if (a->step < b->step) {
        ++a;
      } else if (b->step < a->step) {
        ++b;
      } else {
        err += std::hypot(a->p.x - b->p.x, a->p.y - b->p.y);
        ++overlap;
        ++a;
        ++b;
      }
    }
    if (overlap == 0) continue;
    sum_over_agents += err / overlap;
    ++agents;
  }
  if (agents == 0) throw UndefinedMetric("ade: no agent overlaps between the two trajectory sets");
  return sum_over_agents / agents;
}

long Heatmap::total() const { return std::accumulate(counts_.begin(), counts_.end(), 0L); }

namespace {

void add_if_inside(Heatmap& h, WorldPoint p, const GridEnvironment& env) {
  const Rect b = env.bounds();
  if (p.x < b.xmin || p.x > b.xmax || p.y < b.ymin || p.y > b.ymax) return;
  h.add(world_to_grid(p, env));
}

}  // namespace

Heatmap heatmap(std::span<const WorldPoint> positions, const GridEnvironment& env) {
  Heatmap h(env.width(), env.height());
  for (const auto& p : positions) add_if_inside(h, p, env);
  return h;
}

Heatmap heatmap(const TrackSet& tracks, const GridEnvironment& env) {
  Heatmap h(env.width(), env.height());
  for (const auto& [id, track] : tracks)
    for (const auto& tp : track) add_if_inside(h, tp.p, env);
  return h;
}

std::vector<int> heatmap_levels(const Heatmap& h, int levels) {
  if (levels < 1) throw std::invalid_argument("heatmap_levels: levels must be >= 1");
  std::vector<long> nonzero;
  for (long c : h.counts())
    if (c > 0) nonzero.push_back(c);
  std::sort(nonzero.begin(), nonzero.end());
  const auto m = static_cast<long long>(nonzero.size());

  std::vector<int> out(h.counts().size(), 0);
  for (std::size_t idx = 0; idx < out.size(); ++idx) {
    const long c = h.counts()[idx];
    if (c == 0) continue;
    const auto below = static_cast<long long>(std::lower_bound(nonzero.begin(), nonzero.end(), c) - nonzero.begin());
    out[idx] = 1 + static_cast<int>((below * levels) / m);
  }
  return out;
}

double jaccard_similarity(const Heatmap& a, const Heatmap& b, int levels) {
  if (a.width() != b.width() || a.height() != b.height())
    throw std::invalid_argument("jaccard_similarity: heatmap dimensions differ");
  const auto la = heatmap_levels(a, levels);
  const auto lb = heatmap_levels(b, levels);
  double total = 0.0;
  for (int k = 1; k <= levels; ++k) {
    std::size_t inter = 0;
    std::size_t uni = 0;
    for (std::size_t idx = 0; idx < la.size(); ++idx) {
      const bool in_a = la[idx] == k;
      const bool in_b = lb[idx] == k;
      inter += (in_a && in_b) ? 1 : 0;
      uni += (in_a || in_b) ? 1 : 0;
    }
    total += uni == 0 ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni);
  }
  return total / levels;
}

std::vector<DensityPoint> kde_export(std::span<const double> samples, double bandwidth, int grid_points) {
  if (samples.empty()) throw std::invalid_argument("kde_export: need at least one sample");
  if (!(bandwidth > 0.0)) throw std::invalid_argument("kde_export: bandwidth must be > 0");
  if (grid_points < 2) throw std::invalid_argument("kde_export: need at least two grid points");
  const auto [lo_it, hi_it] = std::minmax_element(samples.begin(), samples.end());
  const double lo = *lo_it - 3.0 * bandwidth;
  const double hi = *hi_it + 3.0 * bandwidth;
  const double norm = 1.0 / (static_cast<double>(samples.size()) * bandwidth * std::sqrt(2.0 * std::numbers::pi));

  std::vector<DensityPoint> curve;
  curve.reserve(static_cast<std::size_t>(grid_points));
  for (int k = 0; k < grid_points; ++k) {
    const double x = lo + (hi - lo) * k / (grid_points - 1);
    double acc = 0.0;
    for (double s : samples) {
      const double z = (x - s) / bandwidth;
      acc += std::exp(-0.5 * z * z);
    }
    curve.push_back({x, acc * norm});
  }
  return curve;
}

double silverman_bandwidth(std::span<const double> samples) {
  if (samples.size() < 2) return 1.0;
  const double n = static_cast<double>(samples.size());
  const double mean = std::accumulate(samples.begin(), samples.end(), 0.0) / n;
  double ss = 0.0;
  for (double s : samples) ss += (s - mean) * (s - mean);
  const double sd = std::sqrt(ss / (n - 1.0));
  if (!(sd > 0.0)) return 1.0;
  return 1.06 * sd * std::pow(n, -0.2);
}

TravelStats travel_stats(std::span<const WorldPoint> points, double dt) {
  if (points.size() < 2) throw std::invalid_argument("travel_stats: need at least two points");
  if (!(dt > 0.0)) throw std::invalid_argument("travel_stats: dt must be > 0");
  TravelStats out;
  for (std::size_t k = 1; k < points.size(); ++k)
    out.distance += std::hypot(points[k].x - points[k - 1].x, points[k].y - points[k - 1].y);
  out.mean_speed = out.distance / (static_cast<double>(points.size() - 1) * dt);
  return out;
}

}  // namespace navfield
