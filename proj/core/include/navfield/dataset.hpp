#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "navfield/grid.hpp"

namespace navfield {

struct DatasetRow {
  long frame = 0;
  int agent_id = 0;
  double x = 0.0;  // meters
  double y = 0.0;
};

/// Recorded pedestrian positions sorted by (agent_id, frame).
struct TrajectoryDataset {
  std::vector<DatasetRow> rows;
  double frame_interval = 0.4;  // seconds per frame unit

  std::vector<int> agent_ids() const;
};

/// Parses `frame<TAB>agent_id<TAB>x<TAB>y` rows. Blank lines and lines
/// starting with '#' are skipped; any whitespace separates fields. Integral
/// values written as floats ("780.0") are accepted for frame and id.
/// Throws ParseError with the line number on malformed rows.
TrajectoryDataset parse_trajectories(std::istream& in, const std::string& source, double frame_interval = 0.4);
TrajectoryDataset load_trajectories(const std::filesystem::path& path, double frame_interval = 0.4);
void write_trajectories(std::ostream& out, const TrajectoryDataset& ds);

/// Resamples every agent onto a common time grid of `target_interval`
/// seconds anchored at the dataset's first frame. `source_interval` is the
/// duration of one frame unit in the input. Samples that coincide with a
/// recorded frame copy it; others are linearly interpolated between the
/// bracketing frames. Output frames are indices on the target grid.
TrajectoryDataset resample(const TrajectoryDataset& ds, double target_interval, double source_interval);

/// Simulation-ready agent derived from a recorded track.
struct AgentSeed {
  int id = 0;
  std::vector<WorldPoint> observed;     // first h_obs positions
  GridCoord start;                      // cell of the last observed position
  GridCoord destination;                // cell of the final recorded position
  double preferred_speed = 0.0;         // mean observed speed, m/s
  std::vector<WorldPoint> real_future;  // positions after the observation window
  int activation_step = 0;              // frame of the last observed position
};

struct Extraction {
  std::vector<AgentSeed> seeds;
  int distinct_agents = 0;
  int skipped_short = 0;
  int skipped_blocked = 0;  // start or end outside the grid or on an obstacle
  int relocated = 0;        // starts moved off a cell already taken
};

/// Observed speeds are floored at this value so every seed can move.
inline constexpr double kMinPreferredSpeed = 0.1;

/// Turns each long-enough agent track into an AgentSeed. Shared start cells
/// are resolved in id order by moving later agents to the nearest free,
/// untaken cell.
Extraction extract_agents(const TrajectoryDataset& ds, const GridEnvironment& env, int h_obs, int min_total_len);

/// Reorders arbitrary whitespace- or comma-separated columns into the
/// canonical TSV layout. `columns` names the input columns in order, e.g.
/// {"frame", "id", "y", "x"}; unnamed extra columns may be "_".
void convert_columns(std::istream& in, std::ostream& out, const std::vector<std::string>& columns,
                     const std::string& source);

}  // namespace navfield
