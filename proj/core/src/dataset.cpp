#include "navfield/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>

#include "navfield/errors.hpp"

namespace navfield {

namespace {

std::vector<std::string> split_fields(const std::string& line, bool allow_commas) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    const bool sep = ch == ' ' || ch == '\t' || ch == '\r' || (allow_commas && ch == ',');
    if (sep) {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

bool skippable(const std::string& line) {
  const auto first = line.find_first_not_of(" \t\r");
  return first == std::string::npos || line[first] == '#';
}

double parse_double(const std::string& field, const std::string& source, std::size_t lineno, const char* what) {
  double v = 0.0;
  const auto* begin = field.data();
  const auto* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc{} || ptr != end || !std::isfinite(v))
    throw ParseError(source, lineno, std::string("non-numeric ") + what + " '" + field + "'");
  return v;
}

long parse_integral(const std::string& field, const std::string& source, std::size_t lineno, const char* what) {
  const double v = parse_double(field, source, lineno, what);
  if (v != std::floor(v) || std::abs(v) > 1e15)
    throw ParseError(source, lineno, std::string(what) + " must be an integer, got '" + field + "'");
  return static_cast<long>(v);
}

void sort_rows(std::vector<DatasetRow>& rows) {
  std::sort(rows.begin(), rows.end(), [](const DatasetRow& a, const DatasetRow& b) {
    return a.agent_id != b.agent_id ? a.agent_id < b.agent_id : a.frame < b.frame;
  });
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

std::vector<int> TrajectoryDataset::agent_ids() const {
  std::vector<int> ids;
  for (const auto& r : rows)
    if (ids.empty() || ids.back() != r.agent_id) ids.push_back(r.agent_id);
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

TrajectoryDataset parse_trajectories(std::istream& in, const std::string& source, double frame_interval) {
  TrajectoryDataset ds;
  ds.frame_interval = frame_interval;
  std::string line;
  std::size_t lineno = 0;
  std::set<std::pair<int, long>> seen;
  while (std::getline(in, line)) {
    ++lineno;
    if (skippable(line)) continue;
    const auto f = split_fields(line, false);
    if (f.size() != 4)
      throw ParseError(source, lineno, "expected 4 fields (frame, agent_id, x, y), got " + std::to_string(f.size()));
    DatasetRow row;
    row.frame = parse_integral(f[0], source, lineno, "frame");
    row.agent_id = static_cast<int>(parse_integral(f[1], source, lineno, "agent_id"));
    row.x = parse_double(f[2], source, lineno, "x");
    row.y = parse_double(f[3], source, lineno, "y");
    if (!seen.insert({row.agent_id, row.frame}).second)
      throw ParseError(source, lineno, "duplicate (agent_id, frame) pair");
    ds.rows.push_back(row);
  }
  sort_rows(ds.rows);
  return ds;
}

TrajectoryDataset load_trajectories(const std::filesystem::path& path, double frame_interval) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open trajectory file " + path.string());
  return parse_trajectories(in, path.string(), frame_interval);
}

void write_trajectories(std::ostream& out, const TrajectoryDataset& ds) {
  for (const auto& r : ds.rows)
    out << r.frame << '\t' << r.agent_id << '\t' << format_number(r.x) << '\t' << format_number(r.y) << '\n';
}

TrajectoryDataset resample(const TrajectoryDataset& ds, double target_interval, double source_interval) {
  if (!(target_interval > 0.0) || !(source_interval > 0.0))
    throw std::invalid_argument("resample: intervals must be positive");
  TrajectoryDataset out;
  out.frame_interval = target_interval;
  if (ds.rows.empty()) return out;

  long first_frame = ds.rows.front().frame;
  for (const auto& r : ds.rows) first_frame = std::min(first_frame, r.frame);
  const double ratio = target_interval / source_interval;  // source frames per target step

  std::size_t begin = 0;
  while (begin < ds.rows.size()) {
    std::size_t end = begin;
    while (end < ds.rows.size() && ds.rows[end].agent_id == ds.rows[begin].agent_id) ++end;
    // Frame positions of this agent, in source frame units relative to first_frame.
    const double span_lo = static_cast<double>(ds.rows[begin].frame - first_frame);
    const double span_hi = static_cast<double>(ds.rows[end - 1].frame - first_frame);
    constexpr double kSlack = 1e-9;
    auto n = static_cast<long>(std::ceil(span_lo / ratio - kSlack));
    std::size_t k = begin;
    for (;; ++n) {
      const double t = static_cast<double>(n) * ratio;
      if (t > span_hi + kSlack) break;
      while (k + 1 < end && static_cast<double>(ds.rows[k + 1].frame - first_frame) <= t + kSlack) ++k;
      const auto& a = ds.rows[k];
      const double ta = static_cast<double>(a.frame - first_frame);
      DatasetRow row{n, a.agent_id, a.x, a.y};
      if (std::abs(t - ta) > kSlack && k + 1 < end) {
        const auto& b = ds.rows[k + 1];
        const double tb = static_cast<double>(b.frame - first_frame);
        const double w = (t - ta) / (tb - ta);
        row.x = a.x + (b.x - a.x) * w;
        row.y = a.y + (b.y - a.y) * w;
      }
      out.rows.push_back(row);
    }
    begin = end;
  }
  sort_rows(out.rows);
  return out;
}

Extraction extract_agents(const TrajectoryDataset& ds, const GridEnvironment& env, int h_obs, int min_total_len) {
  if (h_obs < 2) throw std::invalid_argument("extract_agents: h_obs must be >= 2");
  if (min_total_len <= h_obs) throw std::invalid_argument("extract_agents: min_total_len must exceed h_obs");
  Extraction ex;
  std::set<std::size_t> taken;

  std::size_t begin = 0;
  while (begin < ds.rows.size()) {
    std::size_t end = begin;
    while (end < ds.rows.size() && ds.rows[end].agent_id == ds.rows[begin].agent_id) ++end;
    ++ex.distinct_agents;
    const auto count = static_cast<int>(end - begin);
    const std::size_t first = begin;
    begin = end;
    if (count < min_total_len) {
      ++ex.skipped_short;
      continue;
    }

    AgentSeed seed;
    seed.id = ds.rows[first].agent_id;
    for (std::size_t k = first; k < end; ++k) {
      const WorldPoint p{ds.rows[k].x, ds.rows[k].y};
      if (static_cast<int>(k - first) < h_obs)
        seed.observed.push_back(p);
      else
        seed.real_future.push_back(p);
    }
    seed.activation_step = static_cast<int>(ds.rows[first + static_cast<std::size_t>(h_obs) - 1].frame);

    try {
      seed.start = world_to_grid(seed.observed.back(), env);
      seed.destination = world_to_grid(seed.real_future.back(), env);
    } catch (const std::out_of_range&) {
      ++ex.skipped_blocked;
      continue;
    }
    if (!env.is_free(seed.start) || !env.is_free(seed.destination)) {
      ++ex.skipped_blocked;
      continue;
    }

    double dist = 0.0;
    for (std::size_t k = 1; k < seed.observed.size(); ++k)
      dist += std::hypot(seed.observed[k].x - seed.observed[k - 1].x, seed.observed[k].y - seed.observed[k - 1].y);
    seed.preferred_speed =
        std::max(kMinPreferredSpeed, dist / (static_cast<double>(seed.observed.size() - 1) * ds.frame_interval));

    if (taken.contains(env.index(seed.start))) {
      // Breadth-first search in neighbour order for the closest untaken cell.
      std::queue<GridCoord> frontier;
      std::set<std::size_t> visited{env.index(seed.start)};
      frontier.push(seed.start);
      bool found = false;
      while (!frontier.empty() && !found) {
        const GridCoord c = frontier.front();
        frontier.pop();
        for (const auto& n : neighbors8(c, env)) {
          if (!visited.insert(env.index(n)).second) continue;
          if (!taken.contains(env.index(n))) {
            seed.start = n;
            found = true;
            break;
          }
          frontier.push(n);
        }
      }
      if (!found) {
        ++ex.skipped_blocked;
        continue;
      }
      ++ex.relocated;
    }
    taken.insert(env.index(seed.start));
    ex.seeds.push_back(std::move(seed));
  }
  return ex;
}

void convert_columns(std::istream& in, std::ostream& out, const std::vector<std::string>& columns,
                     const std::string& source) {
  int frame_col = -1, id_col = -1, x_col = -1, y_col = -1;
  for (std::size_t k = 0; k < columns.size(); ++k) {
    const auto& c = columns[k];
    int* slot = c == "frame" ? &frame_col : c == "id" ? &id_col : c == "x" ? &x_col : c == "y" ? &y_col : nullptr;
    if (slot) {
      if (*slot >= 0) throw std::invalid_argument("convert: column '" + c + "' named twice");
      *slot = static_cast<int>(k);
    } else if (c != "_") {
      throw std::invalid_argument("convert: unknown column name '" + c + "'");
    }
  }
  if (frame_col < 0 || id_col < 0 || x_col < 0 || y_col < 0)
    throw std::invalid_argument("convert: columns must name frame, id, x and y");

  std::string line;
  std::size_t lineno = 0;
  TrajectoryDataset ds;
  while (std::getline(in, line)) {
    ++lineno;
    if (skippable(line)) continue;
    const auto f = split_fields(line, true);
    if (f.size() < columns.size())
      throw ParseError(source, lineno, "expected " + std::to_string(columns.size()) + " columns, got " +
                                           std::to_string(f.size()));
    DatasetRow row;
    row.frame = parse_integral(f[static_cast<std::size_t>(frame_col)], source, lineno, "frame");
    row.agent_id = static_cast<int>(parse_integral(f[static_cast<std::size_t>(id_col)], source, lineno, "agent_id"));
    row.x = parse_double(f[static_cast<std::size_t>(x_col)], source, lineno, "x");
    row.y = parse_double(f[static_cast<std::size_t>(y_col)], source, lineno, "y");
    ds.rows.push_back(row);
  }
  sort_rows(ds.rows);
  write_trajectories(out, ds);
}

}  // namespace navfield
