#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "navfield/dataset.hpp"
#include "navfield/grid.hpp"
#include "navfield/scene_io.hpp"
#include "navfield/sim.hpp"

namespace navfield::cli {

/// Missing or unusable user input; maps to the usage exit code.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SetupOptions {
  std::filesystem::path scene;
  std::filesystem::path agents;  // .tsv trajectory dataset or .json agent list
  std::filesystem::path config;  // optional
  std::string mode = "baseline";
  std::filesystem::path trends;
  std::filesystem::path lockstep_dir;
  std::optional<long long> lockstep_timeout_ms;
  std::optional<std::uint64_t> seed;
  std::optional<int> max_steps;
  std::optional<double> source_interval;  // seconds per input frame unit; defaults to dt
};

struct SimulationSetup {
  Scene scene;
  GridEnvironment env;
  SimConfig config;
  std::vector<AgentSpec> agents;
  std::vector<TrajectoryRow> real_rows;  // recorded future positions, dataset mode only
  std::optional<Extraction> extraction;
  std::vector<std::filesystem::path> input_files;
};

/// Loads scene, config and agents and resolves the predictor from the mode
/// flags. Throws InputError for missing files or inconsistent flags.
SimulationSetup prepare_simulation(const SetupOptions& opts);

/// `[{"id": 1, "start": [i, j], "destination": [i, j], "speed": 1.0, "activation_step": 0}, ...]`
std::vector<AgentSpec> parse_agents_json(const std::string& text, const std::string& source);

}  // namespace navfield::cli
