#include "navfield_cli/inputs.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "navfield/errors.hpp"
#include "navfield/sim_io.hpp"

namespace navfield::cli {

namespace {

using nlohmann::json;

void require_file(const std::filesystem::path& p, const char* what) {
  if (p.empty()) throw InputError(std::string("missing required ") + what);
  if (!std::filesystem::is_regular_file(p)) throw InputError(std::string(what) + " not found: " + p.string());
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

GridCoord coord_from(const json& j, const std::string& source, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array() || j.at(key).size() != 2)
    throw ParseError(source, 0, std::string("agent '") + key + "' must be [i, j]");
  return {j.at(key)[0].get<int>(), j.at(key)[1].get<int>()};
}

}  // namespace

std::vector<AgentSpec> parse_agents_json(const std::string& text, const std::string& source) {
  std::vector<AgentSpec> out;
  try {
    const json doc = json::parse(text);
    if (!doc.is_array()) throw ParseError(source, 0, "agent list must be a JSON array");
    for (const auto& a : doc) {
      AgentSpec s;
      s.id = a.at("id").get<int>();
      s.start = coord_from(a, source, "start");
      s.destination = coord_from(a, source, "destination");
      if (a.contains("speed")) s.preferred_speed = a.at("speed").get<double>();
      if (a.contains("activation_step")) s.activation_step = a.at("activation_step").get<int>();
      out.push_back(s);
    }
  } catch (const json::exception& e) {
    throw ParseError(source, 0, e.what());
  }
  return out;
}

SimulationSetup prepare_simulation(const SetupOptions& opts) {
  require_file(opts.scene, "--scene file");
  require_file(opts.agents, "--agents file");
  std::vector<std::filesystem::path> inputs{opts.scene, opts.agents};

  Scene scene = load_scene(opts.scene);
  GridEnvironment env = scene.discretize();

  SimConfig config;
  bool config_sets_max_steps = false;
  if (!opts.config.empty()) {
    require_file(opts.config, "--config file");
    const std::string text = slurp(opts.config);
    config = parse_config(text, opts.config.string());
    config_sets_max_steps = json::parse(text).contains("max_steps");
    inputs.push_back(opts.config);
  }
  if (opts.seed) config.seed = *opts.seed;

  if (opts.mode == "baseline") {
    config.predictor = PredictorKind::baseline();
  } else if (opts.mode == "data-driven") {
    if (!opts.trends.empty()) {
      require_file(opts.trends, "--trends file");
      config.predictor = PredictorKind::trend_file(opts.trends);
      inputs.push_back(opts.trends);
    } else if (!opts.lockstep_dir.empty()) {
      config.predictor = PredictorKind::lockstep(opts.lockstep_dir);
    } else {
      throw InputError("--mode data-driven requires --trends or --lockstep-dir");
    }
  } else {
    throw InputError("unknown --mode '" + opts.mode + "' (expected baseline or data-driven)");
  }
  if (opts.lockstep_timeout_ms) config.predictor.timeout = std::chrono::milliseconds(*opts.lockstep_timeout_ms);

  SimulationSetup setup{std::move(scene), std::move(env), config, {}, {}, std::nullopt, std::move(inputs)};

  if (opts.agents.extension() == ".json") {
    setup.agents = parse_agents_json(slurp(opts.agents), opts.agents.string());
  } else {
    const double source_interval = opts.source_interval.value_or(setup.config.dt);
    auto ds = resample(load_trajectories(opts.agents, source_interval), setup.config.dt, source_interval);
    auto ex = extract_agents(ds, setup.env, setup.config.h_obs, setup.config.h_obs + setup.config.t_p);
    int longest = 0;
    int latest = 0;
    for (const auto& seed : ex.seeds) {
      setup.agents.push_back({seed.id, seed.start, seed.destination, seed.preferred_speed, seed.observed,
                              seed.activation_step});
      for (std::size_t k = 0; k < seed.real_future.size(); ++k)
        setup.real_rows.push_back({seed.activation_step + 1 + static_cast<int>(k), seed.id, seed.real_future[k].x,
                                   seed.real_future[k].y, AgentState::active});
      longest = std::max(longest, static_cast<int>(seed.observed.size() + seed.real_future.size()));
      latest = std::max(latest, seed.activation_step);
    }
    std::sort(setup.real_rows.begin(), setup.real_rows.end(), [](const auto& a, const auto& b) {
      return a.step != b.step ? a.step < b.step : a.agent_id < b.agent_id;
    });
    if (!config_sets_max_steps && longest > 0) setup.config.max_steps = latest + 4 * longest;
    setup.extraction = std::move(ex);
  }
  if (opts.max_steps) setup.config.max_steps = *opts.max_steps;
  setup.config.validate();
  return setup;
}

}  // namespace navfield::cli
