#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

#include "holo/geometry.hpp"

namespace holo {

/// Pure pursuit tracker state. Progress along the path is monotone within
/// one run so the target can never slide backwards.
struct PursuitState {
  double lookahead_distance = 12.0;  // in
  double last_progress = 0.0;        // arc length of the latest target, in
};

struct LookaheadResult {
  Pose2D target;
  PursuitState state;
};

/// Pick the pursuit target for the current robot position.
///
/// Intersects the circle of radius d around the robot with the path and
/// takes the intersection furthest along the path, never behind the last
/// target. Once less than d of path remains the endpoint is targeted.
/// With no intersection at all (robot pushed off the path), the closest
/// point on the not-yet-passed portion re-acquires the path.
inline LookaheadResult find_lookahead(const Path& path, const Pose2D& robot,
                                      PursuitState state) {
  const double d = state.lookahead_distance;
  const double total = path.total_length();

  if (total - state.last_progress < d) {
    state.last_progress = total;
    return {path.end(), state};
  }

  const auto& w = path.waypoints();
  const auto& cum = path.cumulative_arc_length();
  double best_arc = -1.0;
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    const double seg_len = cum[i + 1] - cum[i];
    if (seg_len <= 0.0) continue;
    const double dx = w[i + 1].x - w[i].x;
    const double dy = w[i + 1].y - w[i].y;
    const double fx = w[i].x - robot.x;
    const double fy = w[i].y - robot.y;
    const double a = dx * dx + dy * dy;
    const double b = 2.0 * (fx * dx + fy * dy);
    const double c = fx * fx + fy * fy - d * d;
    const double disc = b * b - 4.0 * a * c;
    if (disc < 0.0) continue;
    const double root = std::sqrt(disc);
    for (const double u : {(-b - root) / (2.0 * a), (-b + root) / (2.0 * a)}) {
      if (u < 0.0 || u > 1.0) continue;
      const double arc = cum[i] + u * seg_len;
      if (arc + 1e-9 < state.last_progress) continue;
      best_arc = std::max(best_arc, arc);
    }
  }

  if (best_arc < 0.0) {
    // Re-acquisition: closest point on the remaining path.
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      if (cum[i + 1] < state.last_progress) continue;
      const double seg_len = cum[i + 1] - cum[i];
      const double dx = w[i + 1].x - w[i].x;
      const double dy = w[i + 1].y - w[i].y;
      const double len2 = dx * dx + dy * dy;
      double u_lo = 0.0;
      if (seg_len > 0.0 && cum[i] < state.last_progress)
        u_lo = (state.last_progress - cum[i]) / seg_len;
      double u = u_lo;
      if (len2 > 0.0) {
        u = ((robot.x - w[i].x) * dx + (robot.y - w[i].y) * dy) / len2;
        u = std::clamp(u, u_lo, 1.0);
      }
      const double cx = w[i].x + u * dx;
      const double cy = w[i].y + u * dy;
      const double dist = std::hypot(robot.x - cx, robot.y - cy);
      if (dist < best_dist) {
        best_dist = dist;
        best_arc = cum[i] + u * seg_len;
      }
    }
    best_arc = std::max(best_arc, state.last_progress);
  }

  state.last_progress = std::max(state.last_progress, best_arc);
  return {point_at_arc_length(path, state.last_progress), state};
}

}  // namespace holo
