#include "navfield/scene_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "navfield/errors.hpp"

namespace navfield {

namespace {

using nlohmann::json;

Rect rect_from(const json& j, const std::string& source, const char* what) {
  if (!j.is_array() || j.size() != 4)
    throw ParseError(source, 0, std::string(what) + " must be [xmin, ymin, xmax, ymax]");
  for (const auto& v : j)
    if (!v.is_number()) throw ParseError(source, 0, std::string(what) + " entries must be numbers");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>(), j[3].get<double>()};
}

json rect_to(const Rect& r) { return json::array({r.xmin, r.ymin, r.xmax, r.ymax}); }

}  // namespace

GridEnvironment Scene::discretize() const { return navfield::discretize(obstacles, bounds, cell_size); }

Scene parse_scene(std::string_view json_text, const std::string& source) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(source, 0, e.what());
  }
  if (!doc.is_object()) throw ParseError(source, 0, "scene must be a JSON object");
  if (!doc.contains("bounds")) throw ParseError(source, 0, "missing key 'bounds'");

  Scene scene;
  scene.bounds = rect_from(doc.at("bounds"), source, "bounds");
  if (doc.contains("cell_size")) {
    if (!doc.at("cell_size").is_number()) throw ParseError(source, 0, "cell_size must be a number");
    scene.cell_size = doc.at("cell_size").get<double>();
  }
  if (doc.contains("obstacles")) {
    const auto& obs = doc.at("obstacles");
    if (!obs.is_array()) throw ParseError(source, 0, "obstacles must be an array");
    for (const auto& o : obs) scene.obstacles.push_back(rect_from(o, source, "obstacle"));
  }
  return scene;
}

Scene load_scene(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scene file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scene(buf.str(), path.string());
}

std::string scene_to_json(const Scene& scene) {
  json doc;
  doc["bounds"] = rect_to(scene.bounds);
  doc["cell_size"] = scene.cell_size;
  doc["obstacles"] = json::array();
  for (const auto& o : scene.obstacles) doc["obstacles"].push_back(rect_to(o));
  return doc.dump(2);
}

}  // namespace navfield
