#pragma once

#include <string>
#include <vector>

#include "holo/geometry.hpp"

namespace holo {

/// A named benchmark path.
struct Scenario {
  std::string name;
  Path path;
  std::string description;
};

/// The three benchmark scenarios, ordered by complexity: a straight run with
/// an end rotation, an L with continuous rotation (most simultaneous
/// rotation), and an S-curve with two heading reversals (most curvature).
inline std::vector<Scenario> default_scenarios() {
  std::vector<Scenario> out;
  out.push_back(Scenario{
      "straight-rotate",
      Path::from_waypoints({{0.0, 0.0, 0.0}, {108.0, 0.0, kPi / 2.0}}),
      "9 ft straight with a 90 degree rotation along the way"});
  out.push_back(Scenario{
      "l-turn",
      Path::from_waypoints(
          {{0.0, 0.0, 0.0}, {48.0, 0.0, kPi / 2.0}, {48.0, 48.0, kPi}}),
      "8 ft L-path rotating 180 degrees continuously"});
  // One sine period, ~10 ft of arc, heading swinging +/-0.6 rad with two
  // direction reversals and zero net rotation.
  out.push_back(Scenario{
      "s-curve",
      Path::from_waypoints({{0.0, 0.0, 0.0},
                            {13.5, 9.8995, 0.3},
                            {27.0, 14.0, 0.6},
                            {40.5, 9.8995, 0.3},
                            {54.0, 0.0, 0.0},
                            {67.5, -9.8995, -0.3},
                            {81.0, -14.0, -0.6},
                            {94.5, -9.8995, -0.3},
                            {108.0, 0.0, 0.0}}),
      "10 ft S-curve, heading swings through two reversals"});
  return out;
}

/// Straight +y move of the given length, used by the setpoint suite.
inline Path straight_path(double length_in) {
  return Path::from_waypoints({{0.0, 0.0, 0.0}, {0.0, length_in, 0.0}});
}

/// The 9 ft straight used by the look-ahead sweep and pursuit comparison.
inline Path nine_foot_path() { return straight_path(108.0); }

}  // namespace holo
