#include "navfield_cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "navfield/dataset.hpp"
#include "navfield/errors.hpp"
#include "navfield/metrics.hpp"
#include "navfield/scene_io.hpp"
#include "navfield/sim.hpp"
#include "navfield/sim_io.hpp"
#include "navfield_cli/inputs.hpp"
#include "navfield_cli/manifest.hpp"

#ifndef NAVFIELD_VERSION
#define NAVFIELD_VERSION "unknown"
#endif

namespace navfield::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct GlobalOptions {
  std::optional<std::uint64_t> seed;
  fs::path config;
  fs::path out;
};

struct SimOptions {
  fs::path scene;
  fs::path agents;
  std::string mode = "baseline";
  fs::path trends;
  fs::path lockstep_dir;
  std::optional<long long> lockstep_timeout_ms;
  std::optional<double> source_interval;
  std::optional<int> max_steps;
};

void add_sim_options(CLI::App* cmd, SimOptions& o) {
  cmd->add_option("--scene", o.scene, "Scene JSON")->required();
  cmd->add_option("--agents", o.agents, "Trajectory TSV dataset or agent list JSON")->required();
  cmd->add_option("--mode", o.mode, "baseline | data-driven")->check(CLI::IsMember({"baseline", "data-driven"}));
  cmd->add_option("--trends", o.trends, "Trend JSONL file (data-driven mode)");
  cmd->add_option("--lockstep-dir", o.lockstep_dir, "Exchange directory for an external predictor");
  cmd->add_option("--lockstep-timeout-ms", o.lockstep_timeout_ms, "Wait limit per prediction cycle");
  cmd->add_option("--source-interval", o.source_interval, "Seconds per input frame unit (default: dt)");
  cmd->add_option("--max-steps", o.max_steps, "Step limit");
}

SetupOptions setup_options(const GlobalOptions& g, const SimOptions& o) {
  SetupOptions s;
  s.scene = o.scene;
  s.agents = o.agents;
  s.config = g.config;
  s.mode = o.mode;
  s.trends = o.trends;
  s.lockstep_dir = o.lockstep_dir;
  s.lockstep_timeout_ms = o.lockstep_timeout_ms;
  s.seed = g.seed;
  s.max_steps = o.max_steps;
  s.source_interval = o.source_interval;
  return s;
}

const fs::path& require_out(const GlobalOptions& g) {
  if (g.out.empty()) throw InputError("--out is required");
  return g.out;
}

std::ofstream open_output(const fs::path& p) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + p.string());
  return f;
}

void write_text(const fs::path& p, const std::string& text) { open_output(p) << text; }

std::vector<double> step_speeds(const TrackSet& tracks, double dt) {
  std::vector<double> speeds;
  for (const auto& [id, track] : tracks)
    for (std::size_t k = 1; k < track.size(); ++k) {
      const int gap = track[k].step - track[k - 1].step;
      if (gap <= 0) continue;
      speeds.push_back(std::hypot(track[k].p.x - track[k - 1].p.x, track[k].p.y - track[k - 1].p.y) / (gap * dt));
    }
  return speeds;
}

json stats_json(const TrackSet& tracks, int id, double dt) {
  auto it = tracks.find(id);
  if (it == tracks.end()) return nullptr;
  std::vector<WorldPoint> pts;
  for (const auto& tp : it->second) pts.push_back(tp.p);
  const TravelStats s = travel_stats(pts, dt);
  return {{"distance", s.distance}, {"mean_speed", s.mean_speed}, {"samples", pts.size()}};
}

void write_heatmap_csv(const fs::path& p, const Heatmap& h) {
  auto f = open_output(p);
  for (int j = 0; j < h.height(); ++j) {
    for (int i = 0; i < h.width(); ++i) f << (i ? "," : "") << h.at({i, j});
    f << '\n';
  }
}

void write_kde_csv(const fs::path& p, const std::vector<DensityPoint>& pts) {
  auto f = open_output(p);
  f << "x,density\n";
  for (const auto& d : pts) f << format_double(d.x) << ',' << format_double(d.density) << '\n';
}

std::optional<double> try_ade(const TrackSet& sim, const TrackSet& real, int horizon) {
  try {
    return ade(sim, real, horizon);
  } catch (const UndefinedMetric&) {
    return std::nullopt;
  }
}

// ---- simulate --------------------------------------------------------------

int cmd_simulate(const GlobalOptions& g, const SimOptions& o, const std::vector<std::string>& args,
                 std::ostream& out) {
  const fs::path& dir = require_out(g);
  SimulationSetup setup = prepare_simulation(setup_options(g, o));
  fs::create_directories(dir);

  World world(setup.env, setup.agents, setup.config);
  const RunSummary summary = world.run();

  std::vector<fs::path> outputs{dir / "trajectories.csv", dir / "summary.json"};
  {
    auto f = open_output(outputs[0]);
    write_trajectory_csv(f, world.log());
  }
  write_text(outputs[1], summary_to_json(summary));
  if (setup.extraction) {
    outputs.push_back(dir / "real.csv");
    auto f = open_output(outputs.back());
    write_trajectory_csv(f, setup.real_rows);
    f.close();
    const Extraction& ex = *setup.extraction;
    json doc{{"distinct_agents", ex.distinct_agents},
             {"extracted", ex.seeds.size()},
             {"skipped_short", ex.skipped_short},
             {"skipped_blocked", ex.skipped_blocked},
             {"relocated", ex.relocated},
             {"max_steps", setup.config.max_steps}};
    outputs.push_back(dir / "extraction.json");
    write_text(outputs.back(), doc.dump(2) + "\n");
  }

  RunManifest m{"simulate", args, setup.config.seed, config_to_json(setup.config), setup.input_files, outputs};
  write_manifest(dir / "manifest.json", m);

  out << "steps=" << summary.steps << " agents=" << summary.agents << " arrived=" << summary.arrived
      << " cycles=" << world.prediction_cycles() << '\n';
  return kExitOk;
}

// ---- evaluate --------------------------------------------------------------

struct EvalOptions {
  fs::path sim;
  fs::path real;
  fs::path scene;
  int horizon = 12;
  int levels = 3;
  double dt = 0.4;
  fs::path heatmaps;
  fs::path kde;
  std::optional<double> bandwidth;
};

int cmd_evaluate(const GlobalOptions& g, const EvalOptions& o, std::ostream& out) {
  for (const auto& [p, what] : {std::pair{o.sim, "--sim"}, {o.real, "--real"}, {o.scene, "--scene"}})
    if (!fs::is_regular_file(p)) throw InputError(std::string(what) + " file not found: " + p.string());
  if (o.horizon < 1) throw InputError("--horizon must be >= 1");
  if (o.levels < 1) throw InputError("--levels must be >= 1");
  if (!(o.dt > 0)) throw InputError("--dt must be positive");

  const GridEnvironment env = load_scene(o.scene).discretize();
  const TrackSet sim = tracks_from_rows(load_trajectory_csv(o.sim));
  const TrackSet real = tracks_from_rows(load_trajectory_csv(o.real));

  const Heatmap hs = heatmap(sim, env);
  const Heatmap hr = heatmap(real, env);
  const auto ade_value = try_ade(sim, real, o.horizon);

  json report;
  report["ade"] = ade_value ? json(*ade_value) : json(nullptr);
  report["horizon"] = o.horizon;
  report["jaccard"] = jaccard_similarity(hs, hr, o.levels);
  report["levels"] = o.levels;
  report["agents"] = {{"sim", sim.size()}, {"real", real.size()}};

  std::vector<int> ids;
  for (const auto& [id, t] : sim) ids.push_back(id);
  for (const auto& [id, t] : real)
    if (!sim.count(id)) ids.push_back(id);
  std::sort(ids.begin(), ids.end());
  json per = json::array();
  for (int id : ids) per.push_back({{"id", id}, {"sim", stats_json(sim, id, o.dt)}, {"real", stats_json(real, id, o.dt)}});
  report["per_agent"] = per;

  if (!o.heatmaps.empty()) {
    fs::create_directories(o.heatmaps);
    write_heatmap_csv(o.heatmaps / "heatmap_sim.csv", hs);
    write_heatmap_csv(o.heatmaps / "heatmap_real.csv", hr);
  }
  if (!o.kde.empty()) {
    fs::create_directories(o.kde);
    for (const auto& [name, tracks] : {std::pair{"sim", &sim}, {"real", &real}}) {
      const auto speeds = step_speeds(*tracks, o.dt);
      if (speeds.empty()) continue;
      const double h = o.bandwidth.value_or(silverman_bandwidth(speeds));
      write_kde_csv(o.kde / (std::string("kde_speed_") + name + ".csv"), kde_export(speeds, h));
    }
  }

  const std::string text = report.dump(2) + "\n";
  if (!g.out.empty()) {
    if (g.out.has_parent_path()) fs::create_directories(g.out.parent_path());
    write_text(g.out, text);
  }
  out << text;
  return kExitOk;
}

// ---- sweep-td --------------------------------------------------------------

int cmd_sweep_td(const GlobalOptions& g, const SimOptions& o, const std::vector<int>& td_values,
                 std::ostream& out) {
  SimulationSetup setup = prepare_simulation(setup_options(g, o));
  if (!setup.extraction) throw InputError("sweep-td needs a trajectory dataset for --agents");
  if (td_values.empty()) throw InputError("--td-values is empty");
  for (int td : td_values)
    if (td < 1 || td > setup.config.t_p)
      throw InputError("t_d=" + std::to_string(td) + " outside [1, " + std::to_string(setup.config.t_p) + "]");

  const TrackSet real = tracks_from_rows(setup.real_rows);
  std::ostringstream csv;
  csv << "td,ade\n";
  for (int td : td_values) {
    SimConfig config = setup.config;
    config.t_d = td;
    World world(setup.env, setup.agents, config);
    world.run();
    const TrackSet sim = tracks_from_rows(world.log());
    const auto value = try_ade(sim, real, config.t_p);
    csv << td << ',' << (value ? format_double(*value) : std::string("nan")) << '\n';
  }
  if (!g.out.empty()) {
    if (g.out.has_parent_path()) fs::create_directories(g.out.parent_path());
    write_text(g.out, csv.str());
  }
  out << csv.str();
  return kExitOk;
}

// ---- export-fields ---------------------------------------------------------

int cmd_export_fields(const GlobalOptions& g, const SimOptions& o, int step, int agent_id, std::ostream& out) {
  const fs::path& dir = require_out(g);
  if (step < 0) throw InputError("--step must be >= 0");
  SimulationSetup setup = prepare_simulation(setup_options(g, o));

  World world(setup.env, setup.agents, setup.config);
  while (world.current_step() < step && !world.finished()) world.step();
  const AgentFields* f = world.current_step() == step ? world.fields(agent_id) : nullptr;
  const Agent* agent = world.find_agent(agent_id);
  if (!f || !agent)
    throw InputError("agent " + std::to_string(agent_id) + " is not active at step " + std::to_string(step));

  fs::create_directories(dir);
  const std::pair<const char*, const FieldMatrix*> matrices[] = {
      {"M_F.csv", &f->navigation}, {"M_C.csv", &world.obstacle_matrix()}, {"M_I.csv", &f->pedestrian},
      {"M_G.csv", &f->global}};
  json files = json::object();
  for (const auto& [name, m] : matrices) {
    auto file = open_output(dir / name);
    write_matrix_csv(file, *m);
    files[to_string(m->kind())] = name;
  }
  {
    auto file = open_output(dir / "direction.csv");
    write_direction_csv(file, f->direction);
  }
  files["direction"] = "direction.csv";

  json line = json::array();
  for (const auto& c : f->direction.center().cells) line.push_back({c.i, c.j});
  json doc{{"step", step},
           {"agent_id", agent_id},
           {"cell", {agent->cell.i, agent->cell.j}},
           {"destination", {agent->destination.i, agent->destination.j}},
           {"width", setup.env.width()},
           {"height", setup.env.height()},
           {"cell_size", setup.env.cell_size()},
           {"origin", {setup.env.origin().x, setup.env.origin().y}},
           {"radius", f->direction.radius()},
           {"trend_line", line},
           {"files", files}};
  write_text(dir / "fields.json", doc.dump(2) + "\n");
  out << "exported fields for agent " << agent_id << " at step " << step << " to " << dir.string() << '\n';
  return kExitOk;
}

// ---- convert ---------------------------------------------------------------

int cmd_convert(const GlobalOptions& g, const fs::path& in_path, const std::string& cols, std::ostream& out) {
  if (g.out.empty()) throw InputError("--out is required");
  if (!fs::is_regular_file(in_path)) throw InputError("--in file not found: " + in_path.string());
  std::vector<std::string> columns;
  std::stringstream ss(cols);
  for (std::string c; std::getline(ss, c, ',');) columns.push_back(c);

  std::ifstream in(in_path);
  std::ostringstream buf;
  convert_columns(in, buf, columns, in_path.string());
  if (g.out.has_parent_path()) fs::create_directories(g.out.parent_path());
  write_text(g.out, buf.str());
  out << "wrote " << g.out.string() << '\n';
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Trend-guided navigation field crowd simulator", "navfield"};
  app.set_version_flag("--version", std::string(NAVFIELD_VERSION));
  app.require_subcommand(1);

  GlobalOptions g;
  app.add_option("--seed", g.seed, "Master seed");
  app.add_option("--config", g.config, "Simulation config JSON");
  app.add_option("--out", g.out, "Output directory (file for evaluate, sweep-td, convert)");

  SimOptions sim_opts;
  auto* simulate = app.add_subcommand("simulate", "Run a simulation");
  add_sim_options(simulate, sim_opts);

  EvalOptions eval_opts;
  auto* evaluate = app.add_subcommand("evaluate", "Compare simulated and recorded trajectories");
  evaluate->add_option("--sim", eval_opts.sim, "Simulated trajectory CSV")->required();
  evaluate->add_option("--real", eval_opts.real, "Recorded trajectory CSV")->required();
  evaluate->add_option("--scene", eval_opts.scene, "Scene JSON")->required();
  evaluate->add_option("--horizon", eval_opts.horizon, "ADE horizon in steps");
  evaluate->add_option("--levels", eval_opts.levels, "Heatmap density levels");
  evaluate->add_option("--dt", eval_opts.dt, "Seconds per step");
  evaluate->add_option("--heatmaps", eval_opts.heatmaps, "Directory for heatmap CSVs");
  evaluate->add_option("--kde", eval_opts.kde, "Directory for speed density CSVs");
  evaluate->add_option("--bandwidth", eval_opts.bandwidth, "KDE bandwidth (default: Silverman)");

  SimOptions sweep_opts;
  std::vector<int> td_values;
  auto* sweep = app.add_subcommand("sweep-td", "ADE for each data-driven period");
  add_sim_options(sweep, sweep_opts);
  sweep->add_option("--td-values", td_values, "Comma-separated periods")->required()->delimiter(',');

  SimOptions export_opts;
  int export_step = 0;
  int export_agent = 0;
  auto* exporter = app.add_subcommand("export-fields", "Write one agent's fields at a given step");
  add_sim_options(exporter, export_opts);
  exporter->add_option("--step", export_step, "Simulation step")->required();
  exporter->add_option("--agent", export_agent, "Agent id")->required();

  fs::path convert_in;
  std::string convert_cols = "frame,id,x,y";
  auto* convert = app.add_subcommand("convert", "Reorder trajectory columns into frame/id/x/y TSV");
  convert->add_option("--in", convert_in, "Input file")->required();
  convert->add_option("--cols", convert_cols, "Input column names, e.g. frame,id,y,x");

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (simulate->parsed()) return cmd_simulate(g, sim_opts, args, out);
    if (evaluate->parsed()) return cmd_evaluate(g, eval_opts, out);
    if (sweep->parsed()) return cmd_sweep_td(g, sweep_opts, td_values, out);
    if (exporter->parsed()) return cmd_export_fields(g, export_opts, export_step, export_agent, out);
    if (convert->parsed()) return cmd_convert(g, convert_in, convert_cols, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const PredictorUnavailable& e) {
    err << "error: predictor unavailable: " << e.what() << '\n';
    return kExitRuntime;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace navfield::cli
