#include "navfield/sim_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "navfield/errors.hpp"

namespace navfield {

namespace {

using nlohmann::json;

template <class T>
void read_key(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

std::vector<std::string> split_on(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == sep) {
      out.push_back(std::move(cur));
      cur.clear();
    } else if (ch != '\r') {
      cur.push_back(ch);
    }
  }
  out.push_back(std::move(cur));
  return out;
}

double parse_cell(const std::string& s, const std::string& source, std::size_t lineno) {
  if (s == "inf") return kInfinity;
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) throw ParseError(source, lineno, "bad number '" + s + "'");
  return v;
}

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string_view state_name(AgentState s) { return s == AgentState::active ? "active" : "arrived"; }

}  // namespace

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, ptr);
}

std::string config_to_json(const SimConfig& c) {
  json j;
  j["dt"] = c.dt;
  j["t_p"] = c.t_p;
  j["t_d"] = c.t_d;
  j["h_obs"] = c.h_obs;
  j["max_steps"] = c.max_steps;
  j["seed"] = c.seed;
  j["default_speed"] = c.default_speed;
  const auto& f = c.field_params;
  j["field_params"] = {{"delta", f.delta}, {"epsilon", f.epsilon}, {"lambda_o", f.lambda_o},
                       {"lambda_h", f.lambda_h}, {"r", f.r}, {"l", f.l}, {"v0", f.v0}, {"kappa", f.kappa}};
  const char* type = c.predictor.type == PredictorKind::Type::baseline     ? "baseline"
                     : c.predictor.type == PredictorKind::Type::trend_file ? "trend_file"
                                                                           : "lockstep";
  j["predictor"] = {{"type", type}, {"path", c.predictor.path.string()}, {"timeout_ms", c.predictor.timeout.count()}};
  return j.dump(2);
}

SimConfig parse_config(std::string_view json_text, const std::string& source) {
  SimConfig c;
  try {
    const json j = json::parse(json_text);
    if (!j.is_object()) throw ParseError(source, 0, "config must be a JSON object");
    read_key(j, "dt", c.dt);
    read_key(j, "t_p", c.t_p);
    read_key(j, "t_d", c.t_d);
    read_key(j, "h_obs", c.h_obs);
    read_key(j, "max_steps", c.max_steps);
    read_key(j, "seed", c.seed);
    read_key(j, "default_speed", c.default_speed);
    if (j.contains("field_params")) {
      const auto& f = j.at("field_params");
      read_key(f, "delta", c.field_params.delta);
      read_key(f, "epsilon", c.field_params.epsilon);
      read_key(f, "lambda_o", c.field_params.lambda_o);
      read_key(f, "lambda_h", c.field_params.lambda_h);
      read_key(f, "r", c.field_params.r);
      read_key(f, "l", c.field_params.l);
      read_key(f, "v0", c.field_params.v0);
      read_key(f, "kappa", c.field_params.kappa);
    }
    if (j.contains("predictor")) {
      const auto& p = j.at("predictor");
      std::string type = "baseline";
      read_key(p, "type", type);
      if (type == "baseline")
        c.predictor.type = PredictorKind::Type::baseline;
      else if (type == "trend_file")
        c.predictor.type = PredictorKind::Type::trend_file;
      else if (type == "lockstep")
        c.predictor.type = PredictorKind::Type::lockstep;
      else
        throw ParseError(source, 0, "unknown predictor type '" + type + "'");
      std::string path;
      read_key(p, "path", path);
      c.predictor.path = path;
      long long timeout_ms = c.predictor.timeout.count();
      read_key(p, "timeout_ms", timeout_ms);
      c.predictor.timeout = std::chrono::milliseconds(timeout_ms);
    }
  } catch (const json::exception& e) {
    throw ParseError(source, 0, e.what());
  }
  return c;
}

SimConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.string());
}

void write_trajectory_csv(std::ostream& out, std::span<const TrajectoryRow> rows) {
  out << "step,agent_id,x,y,state\n";
  for (const auto& r : rows)
    out << r.step << ',' << r.agent_id << ',' << fixed6(r.x) << ',' << fixed6(r.y) << ',' << state_name(r.state) << '\n';
}

std::vector<TrajectoryRow> parse_trajectory_csv(std::istream& in, const std::string& source) {
  std::vector<TrajectoryRow> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (lineno == 1) {
      if (line.rfind("step,agent_id,x,y", 0) != 0) throw ParseError(source, 1, "missing trajectory CSV header");
      continue;
    }
    if (line.empty() || line == "\r") continue;
    const auto f = split_on(line, ',');
    if (f.size() != 5) throw ParseError(source, lineno, "expected 5 columns");
    TrajectoryRow r;
    auto parse_int = [&](const std::string& s) {
      int v = 0;
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc{} || ptr != s.data() + s.size()) throw ParseError(source, lineno, "bad integer '" + s + "'");
      return v;
    };
    r.step = parse_int(f[0]);
    r.agent_id = parse_int(f[1]);
    r.x = parse_cell(f[2], source, lineno);
    r.y = parse_cell(f[3], source, lineno);
    if (f[4] == "active")
      r.state = AgentState::active;
    else if (f[4] == "arrived")
      r.state = AgentState::arrived;
    else
      throw ParseError(source, lineno, "unknown state '" + f[4] + "'");
    rows.push_back(r);
  }
  return rows;
}

std::vector<TrajectoryRow> load_trajectory_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open trajectory CSV " + path.string());
  return parse_trajectory_csv(in, path.string());
}

TrackSet tracks_from_rows(std::span<const TrajectoryRow> rows) {
  TrackSet tracks;
  for (const auto& r : rows) tracks[r.agent_id].push_back({r.step, {r.x, r.y}});
  for (auto& [id, t] : tracks)
    std::stable_sort(t.begin(), t.end(), [](const TrackPoint& a, const TrackPoint& b) { return a.step < b.step; });
  return tracks;
}

std::string summary_to_json(const RunSummary& s) {
  json j;
  j["steps"] = s.steps;
  j["agents"] = s.agents;
  j["arrived"] = s.arrived;
  j["wall_seconds"] = s.wall_seconds;
  j["per_agent"] = json::array();
  for (const auto& a : s.per_agent)
    j["per_agent"].push_back({{"id", a.id}, {"arrived", a.arrived}, {"arrival_step", a.arrival_step},
                              {"distance_m", a.distance}, {"mean_speed_mps", a.mean_speed}});
  return j.dump(2);
}

void write_matrix_csv(std::ostream& out, const FieldMatrix& m) {
  for (int j = 0; j < m.height(); ++j) {
    for (int i = 0; i < m.width(); ++i) {
      if (i > 0) out << ',';
      out << format_double(m.at({i, j}));
    }
    out << '\n';
  }
}

FieldMatrix parse_matrix_csv(std::istream& in, FieldKind kind, const std::string& source) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<double> row;
    for (const auto& f : split_on(line, ',')) row.push_back(parse_cell(f, source, lineno));
    if (!rows.empty() && row.size() != rows.front().size()) throw ParseError(source, lineno, "ragged matrix row");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError(source, 0, "empty matrix");
  FieldMatrix m(static_cast<int>(rows.front().size()), static_cast<int>(rows.size()), kind);
  for (int j = 0; j < m.height(); ++j)
    for (int i = 0; i < m.width(); ++i) m.at({i, j}) = rows[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
  return m;
}

void write_direction_csv(std::ostream& out, const DirectionField& f) {
  for (int j = 0; j < f.height(); ++j) {
    for (int i = 0; i < f.width(); ++i) {
      if (i > 0) out << ',';
      const auto& e = f.at({i, j});
      if (e.kind == DirectionField::Kind::obstacle)
        out << "OBST";
      else if (e.kind == DirectionField::Kind::vector)
        out << e.direction.dx << ';' << e.direction.dy;
    }
    out << '\n';
  }
}

}  // namespace navfield
