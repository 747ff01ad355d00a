#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "navfield/grid.hpp"
#include "navfield/trend.hpp"

namespace navfield {

/// Observed positions of one agent handed to a trend predictor.
struct AgentHistory {
  int agent_id = 0;
  std::vector<WorldPoint> positions;  // oldest first, dt spacing
  GridCoord destination;
  double preferred_speed = 1.0;  // not serialized
};

struct HistorySnapshot {
  int cycle = 0;
  int step = 0;
  std::vector<AgentHistory> agents;
};

// Trend JSON Lines, one record per line:
//   {"agent_id": 3, "made_at_step": 0, "steps": [[mu_x, mu_y, sigma_x, sigma_y, rho], ...]}
// Every record is validated against `horizon`; failures raise ParseError with
// the offending line number.
std::vector<TrendDistribution> parse_trend_jsonl(std::istream& in, const std::string& source, std::size_t horizon);
std::vector<TrendDistribution> load_trend_jsonl(const std::filesystem::path& path, std::size_t horizon);
void write_trend_jsonl(std::ostream& out, const std::vector<TrendDistribution>& trends);

// History JSON Lines:
//   {"agent_id": 3, "cycle": 2, "positions": [[x, y], ...], "destination": [i, j]}
void write_history_jsonl(std::ostream& out, const HistorySnapshot& snapshot);
HistorySnapshot parse_history_jsonl(std::istream& in, const std::string& source);

/// Writes through a temporary sibling file and renames it into place, so a
/// concurrent reader never sees a partial file.
void write_file_atomically(const std::filesystem::path& path, const std::string& contents);

}  // namespace navfield
