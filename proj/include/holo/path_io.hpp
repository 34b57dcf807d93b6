#pragma once

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "holo/geometry.hpp"

namespace holo {

/// Parse a path from JSON text: an array of {x_in, y_in, heading_rad}
/// objects. Validates Path invariants and reports the first bad waypoint.
inline Path parse_path_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw PathFormatError(0, std::string("not valid JSON: ") + e.what());
  }
  if (!j.is_array()) throw PathFormatError(0, "top level must be an array");
  std::vector<Pose2D> waypoints;
  waypoints.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto& o = j[i];
    if (!o.is_object() || !o.contains("x_in") || !o.contains("y_in") ||
        !o.contains("heading_rad"))
      throw PathFormatError(static_cast<int>(i),
                            "expected object with x_in, y_in, heading_rad");
    waypoints.push_back(Pose2D{o["x_in"].get<double>(), o["y_in"].get<double>(),
                               o["heading_rad"].get<double>()});
  }
  return Path::from_waypoints(std::move(waypoints));
}

inline Path load_path_file(const std::string& filename) {
  std::ifstream in(filename);
  if (!in) throw std::runtime_error("cannot open path file: " + filename);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return parse_path_json(text);
}

inline std::string path_to_json(const Path& path) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& w : path.waypoints())
    j.push_back({{"x_in", w.x}, {"y_in", w.y}, {"heading_rad", w.heading}});
  return j.dump(2);
}

}  // namespace holo
