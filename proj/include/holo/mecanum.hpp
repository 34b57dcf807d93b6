#pragma once

#include <algorithm>
#include <cmath>

#include "holo/geometry.hpp"

namespace holo {

/// Mecanum drivetrain geometry. The robot frame has +y forward (the rolling
/// direction of the side odometry pods) and +x to the right; heading is
/// positive counterclockwise.
struct MecanumGeometry {
  double half_length = 7.0;   // l_x, roller contact offset fore/aft, in
  double half_width = 7.0;    // l_y, in
  double wheel_radius = 2.0;  // in
  double kv_wheel = 4.5;      // wheel surface (in/s)/V
};

/// Per-motor voltages, front-left/front-right/back-left/back-right.
struct WheelCommand {
  double front_left = 0.0;
  double front_right = 0.0;
  double back_left = 0.0;
  double back_right = 0.0;

  double max_abs() const {
    return std::max({std::abs(front_left), std::abs(front_right),
                     std::abs(back_left), std::abs(back_right)});
  }
};

/// Tracking-wheel layout: two y-facing pods at +/- track_half_width and one
/// x-facing pod back_offset inches behind center.
struct OdometryGeometry {
  double track_half_width = 6.5;  // b, in
  double back_offset = 5.0;       // r_b, in (positive = behind center)
  double counts_per_inch = 325.0;
};

/// Chassis twist to wheel voltages with proportional desaturation: if any
/// wheel would exceed v_battery all four scale down together, preserving the
/// direction of the commanded twist.
inline WheelCommand inverse_kinematics(const Twist2D& twist, const MecanumGeometry& g,
                                       double v_battery) {
  const double k = g.half_length + g.half_width;
  WheelCommand cmd;
  cmd.front_left = (twist.vy + twist.vx - k * twist.omega) / g.kv_wheel;
  cmd.front_right = (twist.vy - twist.vx + k * twist.omega) / g.kv_wheel;
  cmd.back_left = (twist.vy - twist.vx - k * twist.omega) / g.kv_wheel;
  cmd.back_right = (twist.vy + twist.vx + k * twist.omega) / g.kv_wheel;
  const double peak = cmd.max_abs();
  if (peak > v_battery) {
    const double scale = v_battery / peak;
    cmd.front_left *= scale;
    cmd.front_right *= scale;
    cmd.back_left *= scale;
    cmd.back_right *= scale;
  }
  return cmd;
}

/// Least-squares inverse of the wheel mapping (the columns are orthogonal,
/// so this is exact on anything inverse_kinematics produces).
inline Twist2D forward_kinematics(const WheelCommand& wheels, const MecanumGeometry& g) {
  const double k = g.half_length + g.half_width;
  const double fl = wheels.front_left * g.kv_wheel;
  const double fr = wheels.front_right * g.kv_wheel;
  const double bl = wheels.back_left * g.kv_wheel;
  const double br = wheels.back_right * g.kv_wheel;
  Twist2D t;
  t.vx = (fl - fr - bl + br) / 4.0;
  t.vy = (fl + fr + bl + br) / 4.0;
  t.omega = (-fl + fr - bl + br) / (4.0 * k);
  return t;
}

/// Measured wheel travel, inches (counts / counts_per_inch).
struct OdometryDeltas {
  double left = 0.0;
  double right = 0.0;
  double back = 0.0;
};

/// Advance a pose by one odometry step using the constant-twist (pose
/// exponential) update; exact whenever the body twist was constant over the
/// step. Heading comes out wrapped.
inline Pose2D odometry_update(const Pose2D& pose, const OdometryDeltas& d,
                              const OdometryGeometry& g) {
  const double dtheta = (d.right - d.left) / (2.0 * g.track_half_width);
  const double dy = (d.right + d.left) / 2.0;
  const double dx = d.back - g.back_offset * dtheta;

  double s, c;  // sin(dtheta)/dtheta and (1-cos(dtheta))/dtheta
  if (std::abs(dtheta) < 1e-6) {
    s = 1.0 - dtheta * dtheta / 6.0;
    c = dtheta / 2.0 - dtheta * dtheta * dtheta / 24.0;
  } else {
    s = std::sin(dtheta) / dtheta;
    c = (1.0 - std::cos(dtheta)) / dtheta;
  }
  const double lx = dx * s - dy * c;  // body-frame displacement
  const double ly = dx * c + dy * s;

  const double ch = std::cos(pose.heading);
  const double sh = std::sin(pose.heading);
  return Pose2D{pose.x + lx * ch - ly * sh, pose.y + lx * sh + ly * ch,
                wrap_angle(pose.heading + dtheta)};
}

/// Convert raw count deltas to inch deltas.
inline OdometryDeltas deltas_from_counts(double left, double right, double back,
                                         const OdometryGeometry& g) {
  return OdometryDeltas{left / g.counts_per_inch, right / g.counts_per_inch,
                        back / g.counts_per_inch};
}

}  // namespace holo
