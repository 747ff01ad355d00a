#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "navfield/direction_field.hpp"
#include "navfield/field_matrix.hpp"
#include "navfield/metrics.hpp"
#include "navfield/sim.hpp"

namespace navfield {

// SimConfig as JSON, keys mirroring the struct fields. Missing keys keep
// their defaults; `predictor` is {"type": "baseline" | "trend_file" |
// "lockstep", "path": "...", "timeout_ms": 30000}.
std::string config_to_json(const SimConfig& config);
SimConfig parse_config(std::string_view json_text, const std::string& source = "<config>");
SimConfig load_config(const std::filesystem::path& path);

// Trajectory log CSV with header `step,agent_id,x,y,state`.
void write_trajectory_csv(std::ostream& out, std::span<const TrajectoryRow> rows);
std::vector<TrajectoryRow> parse_trajectory_csv(std::istream& in, const std::string& source);
std::vector<TrajectoryRow> load_trajectory_csv(const std::filesystem::path& path);
TrackSet tracks_from_rows(std::span<const TrajectoryRow> rows);

std::string summary_to_json(const RunSummary& summary);

// Field matrices as CSV: one grid row (fixed j) per line starting from j = 0,
// values in shortest round-trip form, `inf` for +infinity.
void write_matrix_csv(std::ostream& out, const FieldMatrix& m);
FieldMatrix parse_matrix_csv(std::istream& in, FieldKind kind, const std::string& source);
// Direction fields as CSV of `dx;dy` cells, `OBST` on obstacles and empty
// cells outside the domain.
void write_direction_csv(std::ostream& out, const DirectionField& f);

std::string format_double(double v);

}  // namespace navfield
