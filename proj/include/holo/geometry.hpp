#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <utility>
#include <vector>

#include "holo/errors.hpp"

namespace holo {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

/// Normalize an angle to (-pi, pi].
inline double wrap_angle(double theta) {
  assert(std::isfinite(theta));
  double w = std::remainder(theta, 2.0 * kPi);
  if (w <= -kPi) w += 2.0 * kPi;
  return w;
}

/// Planar pose. Units are inches and radians; heading is kept in (-pi, pi]
/// by every operation that returns a Pose2D.
struct Pose2D {
  double x = 0.0;
  double y = 0.0;
  double heading = 0.0;
};

/// Chassis velocity (robot or world frame depending on context), in/s and rad/s.
struct Twist2D {
  double vx = 0.0;
  double vy = 0.0;
  double omega = 0.0;
};

inline double distance_xy(const Pose2D& a, const Pose2D& b) {
  return std::hypot(b.x - a.x, b.y - a.y);
}

/// Net translation and rotation of a path. `delta_h` is the magnitude used
/// for power allocation; the signed total is kept alongside.
struct PathDisplacement {
  double delta_x = 0.0;         // total arc length, in
  double delta_h = 0.0;         // |signed total rotation|, rad
  double delta_h_signed = 0.0;  // sum of shortest signed per-segment turns, rad
};

/// Polyline path with linearly interpolated headings.
///
/// Waypoints must be finite, consecutive waypoints may only coincide in XY
/// when their headings differ, and headings are wrapped on construction.
class Path {
 public:
  static Path from_waypoints(std::vector<Pose2D> waypoints) {
    if (waypoints.size() < 2)
      throw PathFormatError(static_cast<int>(waypoints.size()),
                            "path needs at least 2 waypoints");
    for (std::size_t i = 0; i < waypoints.size(); ++i) {
      Pose2D& w = waypoints[i];
      if (!std::isfinite(w.x) || !std::isfinite(w.y) || !std::isfinite(w.heading))
        throw PathFormatError(static_cast<int>(i), "non-finite field");
      w.heading = wrap_angle(w.heading);
    }
    std::vector<double> cum(waypoints.size(), 0.0);
    for (std::size_t i = 1; i < waypoints.size(); ++i) {
      const double len = distance_xy(waypoints[i - 1], waypoints[i]);
      const double turn = wrap_angle(waypoints[i].heading - waypoints[i - 1].heading);
      if (len <= 1e-9 && turn == 0.0)
        throw PathFormatError(static_cast<int>(i),
                              "coincident with previous waypoint");
      cum[i] = cum[i - 1] + len;
    }
    return Path(std::move(waypoints), std::move(cum));
  }

  const std::vector<Pose2D>& waypoints() const { return waypoints_; }
  const std::vector<double>& cumulative_arc_length() const { return cum_; }
  double total_length() const { return cum_.back(); }
  const Pose2D& start() const { return waypoints_.front(); }
  const Pose2D& end() const { return waypoints_.back(); }

 private:
  Path(std::vector<Pose2D> w, std::vector<double> c)
      : waypoints_(std::move(w)), cum_(std::move(c)) {}

  std::vector<Pose2D> waypoints_;
  std::vector<double> cum_;
};

inline PathDisplacement total_displacement(const Path& path) {
  PathDisplacement d;
  d.delta_x = path.total_length();
  const auto& w = path.waypoints();
  for (std::size_t i = 1; i < w.size(); ++i)
    d.delta_h_signed += wrap_angle(w[i].heading - w[i - 1].heading);
  d.delta_h = std::abs(d.delta_h_signed);
  return d;
}

/// Pose on the polyline at arc length `s` from the start, `s` clamped to
/// [0, total]. Heading interpolates along the shortest signed arc; at a knot
/// shared by a zero-length (rotation-only) segment the post-rotation heading
/// wins.
inline Pose2D point_at_arc_length(const Path& path, double s) {
  const auto& w = path.waypoints();
  const auto& cum = path.cumulative_arc_length();
  if (s <= 0.0) return w.front();
  if (s >= cum.back()) return w.back();
  // First segment whose end lies strictly past s.
  std::size_t i = 0;
  while (i + 2 < w.size() && cum[i + 1] <= s) ++i;
  const double len = cum[i + 1] - cum[i];
  const double u = len > 0.0 ? (s - cum[i]) / len : 1.0;
  const double turn = wrap_angle(w[i + 1].heading - w[i].heading);
  return Pose2D{w[i].x + u * (w[i + 1].x - w[i].x),
                w[i].y + u * (w[i + 1].y - w[i].y),
                wrap_angle(w[i].heading + u * turn)};
}

/// Closest point on the polyline to `p` in XY. Returns {arc length, distance}.
inline std::pair<double, double> closest_arc_length(const Path& path, const Pose2D& p) {
  const auto& w = path.waypoints();
  const auto& cum = path.cumulative_arc_length();
  double best_arc = 0.0;
  double best_dist = distance_xy(w.front(), p);
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    const double dx = w[i + 1].x - w[i].x;
    const double dy = w[i + 1].y - w[i].y;
    const double len2 = dx * dx + dy * dy;
    double u = 0.0;
    if (len2 > 0.0) {
      u = ((p.x - w[i].x) * dx + (p.y - w[i].y) * dy) / len2;
      u = std::clamp(u, 0.0, 1.0);
    }
    const double cx = w[i].x + u * dx;
    const double cy = w[i].y + u * dy;
    const double dist = std::hypot(p.x - cx, p.y - cy);
    if (dist < best_dist) {
      best_dist = dist;
      best_arc = cum[i] + u * (cum[i + 1] - cum[i]);
    }
  }
  return {best_arc, best_dist};
}

/// Unit tangent of the polyline at arc length s (world frame). Zero-length
/// segments inherit the nearest moving segment's direction.
inline std::pair<double, double> tangent_at_arc_length(const Path& path, double s) {
  const auto& w = path.waypoints();
  const auto& cum = path.cumulative_arc_length();
  s = std::clamp(s, 0.0, cum.back());
  std::size_t i = 0;
  while (i + 2 < w.size() && cum[i + 1] <= s) ++i;
  // Walk outward for a segment with real length.
  for (std::size_t k = 0; k < w.size(); ++k) {
    const std::size_t fwd = i + k;
    if (fwd + 1 < w.size() && cum[fwd + 1] - cum[fwd] > 0.0) { i = fwd; break; }
    if (k <= i && cum[i - k + 1] - cum[i - k] > 0.0) { i = i - k; break; }
  }
  const double dx = w[i + 1].x - w[i].x;
  const double dy = w[i + 1].y - w[i].y;
  const double len = std::hypot(dx, dy);
  if (len == 0.0) return {1.0, 0.0};  // pure-rotation path; direction is moot
  return {dx / len, dy / len};
}

}  // namespace holo
