#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "navfield/grid.hpp"

namespace navfield {

/// Scene description as stored on disk:
/// `{"bounds": [xmin, ymin, xmax, ymax], "cell_size": 0.4, "obstacles": [[xmin, ymin, xmax, ymax], ...]}`
struct Scene {
  Rect bounds;
  double cell_size = 0.4;
  std::vector<Rect> obstacles;

  GridEnvironment discretize() const;
};

/// Throws ParseError on malformed JSON or missing keys.
Scene parse_scene(std::string_view json_text, const std::string& source = "<scene>");
Scene load_scene(const std::filesystem::path& path);
std::string scene_to_json(const Scene& scene);

}  // namespace navfield
