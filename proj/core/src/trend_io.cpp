#include "navfield/trend_io.hpp"

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

bool blank(const std::string& line) { return line.find_first_not_of(" \t\r\n") == std::string::npos; }

json parse_line(const std::string& line, const std::string& source, std::size_t lineno) {
  try {
    json j = json::parse(line);
    if (!j.is_object()) throw ParseError(source, lineno, "record must be a JSON object");
    return j;
  } catch (const json::parse_error& e) {
    throw ParseError(source, lineno, std::string("invalid JSON: ") + e.what());
  }
}

int integer_field(const json& j, const char* key, const std::string& source, std::size_t lineno) {
  if (!j.contains(key) || !j.at(key).is_number_integer())
    throw ParseError(source, lineno, std::string("missing or non-integer '") + key + "'");
  return j.at(key).get<int>();
}

double number(const json& j, const std::string& source, std::size_t lineno) {
  if (!j.is_number()) throw ParseError(source, lineno, "expected a number");
  return j.get<double>();
}

}  // namespace

std::vector<TrendDistribution> parse_trend_jsonl(std::istream& in, const std::string& source, std::size_t horizon) {
  std::vector<TrendDistribution> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (blank(line)) continue;
    const json j = parse_line(line, source, lineno);
    TrendDistribution dist;
    dist.agent_id = integer_field(j, "agent_id", source, lineno);
    dist.made_at_step = integer_field(j, "made_at_step", source, lineno);
    if (!j.contains("steps") || !j.at("steps").is_array())
      throw ParseError(source, lineno, "missing 'steps' array");
    for (const auto& s : j.at("steps")) {
      if (!s.is_array() || s.size() != 5)
        throw ParseError(source, lineno, "each step must be [mu_x, mu_y, sigma_x, sigma_y, rho]");
      dist.steps.push_back({number(s[0], source, lineno), number(s[1], source, lineno),
                            number(s[2], source, lineno), number(s[3], source, lineno),
                            number(s[4], source, lineno)});
    }
    try {
      dist.validate(horizon);
    } catch (const std::invalid_argument& e) {
      throw ParseError(source, lineno, e.what());
    }
    out.push_back(std::move(dist));
  }
  return out;
}

std::vector<TrendDistribution> load_trend_jsonl(const std::filesystem::path& path, std::size_t horizon) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open trend file " + path.string());
  return parse_trend_jsonl(in, path.string(), horizon);
}

void write_trend_jsonl(std::ostream& out, const std::vector<TrendDistribution>& trends) {
  for (const auto& t : trends) {
    json j;
    j["agent_id"] = t.agent_id;
    j["made_at_step"] = t.made_at_step;
    j["steps"] = json::array();
    for (const auto& s : t.steps) j["steps"].push_back({s.mu_x, s.mu_y, s.sigma_x, s.sigma_y, s.rho});
    out << j.dump() << '\n';
  }
}

void write_history_jsonl(std::ostream& out, const HistorySnapshot& snapshot) {
  for (const auto& a : snapshot.agents) {
    json j;
    j["agent_id"] = a.agent_id;
    j["cycle"] = snapshot.cycle;
    j["positions"] = json::array();
    for (const auto& p : a.positions) j["positions"].push_back({p.x, p.y});
    j["destination"] = {a.destination.i, a.destination.j};
    out << j.dump() << '\n';
  }
}

HistorySnapshot parse_history_jsonl(std::istream& in, const std::string& source) {
  HistorySnapshot snap;
  std::string line;
  std::size_t lineno = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++lineno;
    if (blank(line)) continue;
    const json j = parse_line(line, source, lineno);
    AgentHistory a;
    a.agent_id = integer_field(j, "agent_id", source, lineno);
    const int cycle = integer_field(j, "cycle", source, lineno);
    if (first) {
      snap.cycle = cycle;
      first = false;
    } else if (cycle != snap.cycle) {
      throw ParseError(source, lineno, "records disagree on 'cycle'");
    }
    if (!j.contains("positions") || !j.at("positions").is_array())
      throw ParseError(source, lineno, "missing 'positions' array");
    for (const auto& p : j.at("positions")) {
      if (!p.is_array() || p.size() != 2) throw ParseError(source, lineno, "positions must be [x, y] pairs");
      a.positions.push_back({number(p[0], source, lineno), number(p[1], source, lineno)});
    }
    if (!j.contains("destination") || !j.at("destination").is_array() || j.at("destination").size() != 2 ||
        !j.at("destination")[0].is_number_integer() || !j.at("destination")[1].is_number_integer())
      throw ParseError(source, lineno, "destination must be [i, j]");
    a.destination = {j.at("destination")[0].get<int>(), j.at("destination")[1].get<int>()};
    snap.agents.push_back(std::move(a));
  }
  return snap;
}

void write_file_atomically(const std::filesystem::path& path, const std::string& contents) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << contents;
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace navfield
