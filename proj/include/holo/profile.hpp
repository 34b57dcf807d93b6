#pragma once

#include <array>
#include <cmath>
#include <optional>

#include "holo/geometry.hpp"

namespace holo {

/// Measured drivetrain constants, one set per chassis degree of freedom.
/// kv maps volts to steady-state velocity, ka maps volts to acceleration.
struct RobotConstraints {
  double kv_x = 4.0, kv_y = 4.5, kv_h = 0.30;     // (in/s)/V, (rad/s)/V
  double ka_x = 6.5, ka_y = 7.0, ka_h = 0.55;     // (in/s^2)/V, (rad/s^2)/V
  double v_max_x = 42.0, v_max_y = 48.0, v_max_h = 2.2;
  double a_max_x = 70.0, a_max_y = 75.0, a_max_h = 5.5;
  double j_max_x = 550.0, j_max_y = 600.0, j_max_h = 60.0;
  double v_battery = 12.0;

  void validate() const {
    const double fields[] = {kv_x, kv_y, kv_h, ka_x, ka_y, ka_h,
                             v_max_x, v_max_y, v_max_h, a_max_x, a_max_y, a_max_h,
                             j_max_x, j_max_y, j_max_h, v_battery};
    for (double f : fields)
      if (!(f > 0.0) || !std::isfinite(f))
        throw InvalidConstraint("constraints must be positive and finite");
    if (v_max_x > kv_x * v_battery || v_max_y > kv_y * v_battery ||
        v_max_h > kv_h * v_battery)
      throw InvalidConstraint("v_max exceeds kv * v_battery");
  }
};

/// Interpolate an (x, y) axis pair at bearing theta on the speed ellipse.
inline double elliptical_limit(double x_limit, double y_limit, double theta) {
  const double cx = std::cos(theta) / x_limit;
  const double sy = std::sin(theta) / y_limit;
  return 1.0 / std::sqrt(cx * cx + sy * sy);
}

/// Velocity limits after splitting the voltage budget between translation
/// and rotation for one particular path.
struct AllocatedLimits {
  double v_linear_eff = 0.0;      // in/s
  double v_h_eff = 0.0;           // rad/s
  double travel_direction_kv = 0.0;  // (in/s)/V at the path's dominant bearing
};

/// Split the voltage budget so translation and rotation finish together.
///
/// Solves V_t + V_r = v_battery with v / v_ang = delta_x / delta_h,
/// v = kv_lin * V_t and v_ang = kv_h * V_r, then clamps against the
/// unallocated per-axis maxima. `dominant_direction` is the travel bearing
/// in the robot frame and selects kv_lin on the kv_x/kv_y ellipse.
inline AllocatedLimits allocate_power(const RobotConstraints& c, double delta_x,
                                      double delta_h, double dominant_direction) {
  if (delta_x < 0.0 || delta_h < 0.0)
    throw InvalidConstraint("displacements must be nonnegative");
  constexpr double kEps = 1e-12;
  if (delta_x <= kEps && delta_h <= kEps)
    throw DegeneratePath("path has no translation and no rotation");
  const double kv_lin = elliptical_limit(c.kv_x, c.kv_y, dominant_direction);
  const double v_max_lin = elliptical_limit(c.v_max_x, c.v_max_y, dominant_direction);
  AllocatedLimits out;
  out.travel_direction_kv = kv_lin;
  if (delta_h <= kEps) {
    out.v_linear_eff = v_max_lin;
    out.v_h_eff = c.v_max_h;
    return out;
  }
  if (delta_x <= kEps) {
    out.v_linear_eff = v_max_lin;
    out.v_h_eff = c.v_max_h;
    return out;
  }
  const double ratio = delta_x / delta_h;
  const double v_ang = c.v_battery / (ratio / kv_lin + 1.0 / c.kv_h);
  const double v = ratio * v_ang;
  out.v_linear_eff = std::min(v, v_max_lin);
  out.v_h_eff = std::min(v_ang, c.v_max_h);
  return out;
}

/// Position, velocity, acceleration at one instant of a profile.
struct KinematicState {
  double position = 0.0;
  double velocity = 0.0;
  double acceleration = 0.0;
};

/// Seven-segment jerk-limited profile from rest to rest.
///
/// Segment jerks follow (+J, 0, -J, 0, -J, 0, +J); segments 2 and 6 vanish
/// when the acceleration ramp alone reaches cruise velocity. Sampling is
/// closed form from cached segment-boundary states.
class MotionProfile {
 public:
  struct Segment {
    double duration = 0.0;
    double jerk = 0.0;
  };

  static constexpr int kSegments = 7;

  /// All-zero profile representing a degree of freedom with no displacement.
  static MotionProfile zero() { return MotionProfile(); }

  static MotionProfile from_segments(const std::array<Segment, kSegments>& segs,
                                     double total_distance) {
    MotionProfile p;
    p.segments_ = segs;
    p.total_distance_ = total_distance;
    p.rebuild_boundaries();
    return p;
  }

  const std::array<Segment, kSegments>& segments() const { return segments_; }
  double total_time() const { return total_time_; }
  double total_distance() const { return total_distance_; }
  bool is_zero() const { return total_time_ == 0.0; }

  /// Jerk of the segment containing t (clamped); boundaries report the
  /// segment being entered.
  double jerk_at(double t) const {
    if (total_time_ == 0.0) return 0.0;
    if (t >= total_time_) return segments_[kSegments - 1].jerk;
    double t0 = 0.0;
    for (int i = 0; i < kSegments; ++i) {
      if (t < t0 + segments_[i].duration) return segments_[i].jerk;
      t0 += segments_[i].duration;
    }
    return segments_[kSegments - 1].jerk;
  }

  /// Closed-form sample; t is clamped to [0, total_time].
  KinematicState sample(double t) const {
    if (!(t > 0.0)) return boundary_[0];
    if (t >= total_time_) return boundary_[kSegments];
    int i = 0;
    double t0 = 0.0;
    while (i < kSegments - 1 && t0 + segments_[i].duration <= t) {
      t0 += segments_[i].duration;
      ++i;
    }
    const double tau = t - t0;
    const KinematicState& b = boundary_[i];
    const double j = segments_[i].jerk;
    KinematicState s;
    s.acceleration = b.acceleration + j * tau;
    s.velocity = b.velocity + b.acceleration * tau + 0.5 * j * tau * tau;
    s.position = b.position + b.velocity * tau + 0.5 * b.acceleration * tau * tau +
                 j * tau * tau * tau / 6.0;
    return s;
  }

 private:
  void rebuild_boundaries() {
    boundary_[0] = KinematicState{};
    total_time_ = 0.0;
    for (int i = 0; i < kSegments; ++i) {
      const double dt = segments_[i].duration;
      const double j = segments_[i].jerk;
      const KinematicState& b = boundary_[i];
      KinematicState n;
      n.acceleration = b.acceleration + j * dt;
      n.velocity = b.velocity + b.acceleration * dt + 0.5 * j * dt * dt;
      n.position = b.position + b.velocity * dt + 0.5 * b.acceleration * dt * dt +
                   j * dt * dt * dt / 6.0;
      boundary_[i + 1] = n;
      total_time_ += dt;
    }
  }

  std::array<Segment, kSegments> segments_{};
  std::array<KinematicState, kSegments + 1> boundary_{};
  double total_time_ = 0.0;
  double total_distance_ = 0.0;
};

/// Build a rest-to-rest profile covering `distance`. Returns nullopt when the
/// distance is too short to reach v_max and stop again (the caller is
/// expected to skip profiling entirely in that case).
inline std::optional<MotionProfile> build_profile(double distance, double v_max,
                                                  double a_max, double j_max) {
  if (!(distance > 0.0) || !(v_max > 0.0) || !(a_max > 0.0) || !(j_max > 0.0) ||
      !std::isfinite(distance) || !std::isfinite(v_max) || !std::isfinite(a_max) ||
      !std::isfinite(j_max))
    throw InvalidConstraint("profile parameters must be positive and finite");

  double t_ramp, t_hold;  // jerk phase and constant-acceleration phase
  if (a_max * a_max / j_max > v_max) {
    // Triangular acceleration: peak accel sqrt(v*j) < a_max.
    t_ramp = std::sqrt(v_max / j_max);
    t_hold = 0.0;
  } else {
    t_ramp = a_max / j_max;
    t_hold = v_max / a_max - a_max / j_max;
  }
  const double t_rise = 2.0 * t_ramp + t_hold;   // rest to v_max
  const double d_min = v_max * t_rise;           // speed-up plus slow-down
  if (distance < d_min) return std::nullopt;     // too short; skip profiling
  const double t_cruise = (distance - d_min) / v_max;

  const double j = j_max;
  std::array<MotionProfile::Segment, MotionProfile::kSegments> segs = {{
      {t_ramp, +j}, {t_hold, 0.0}, {t_ramp, -j}, {t_cruise, 0.0},
      {t_ramp, -j}, {t_hold, 0.0}, {t_ramp, +j},
  }};
  return MotionProfile::from_segments(segs, distance);
}

/// Profile pair for one path: translation along arc length plus rotation,
/// duration-synchronized. `rotation_sign` orients the angular profile.
struct HolonomicProfiles {
  MotionProfile translational;
  MotionProfile angular;
  double total_time = 0.0;
  double rotation_sign = 0.0;
  double dominant_direction = 0.0;  // robot-frame bearing used for allocation
  AllocatedLimits limits;
};

/// Travel bearing for allocation: net-displacement direction in the frame of
/// the starting pose, falling back to the first moving segment for loops.
inline double dominant_direction_of(const Path& path) {
  const Pose2D& a = path.start();
  const Pose2D& b = path.end();
  double dx = b.x - a.x, dy = b.y - a.y;
  if (std::hypot(dx, dy) <= 1e-9) {
    const auto [tx, ty] = tangent_at_arc_length(path, 0.0);
    dx = tx;
    dy = ty;
  }
  return wrap_angle(std::atan2(dy, dx) - a.heading);
}

namespace detail {
// Rebuild `profile` with cruise velocity lowered until its duration matches
// `target_time`. Lowering v always stays feasible, and duration is strictly
// decreasing in v, so plain bisection converges.
inline MotionProfile stretch_to_duration(double distance, double v_hi, double a_max,
                                         double j_max, double target_time,
                                         double tolerance_s) {
  double lo = distance / target_time;  // cruise this slow can't finish early
  lo = std::min(lo, v_hi);
  double hi = v_hi;
  MotionProfile best = *build_profile(distance, hi, a_max, j_max);
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    MotionProfile p = *build_profile(distance, mid, a_max, j_max);
    if (std::abs(p.total_time() - target_time) <= tolerance_s) return p;
    if (p.total_time() > target_time)
      lo = mid;
    else
      hi = mid;
    best = p;
  }
  return best;
}
}  // namespace detail

/// Allocate power, profile translation and rotation separately, then slow the
/// profile that would finish first until both durations agree to 1e-6 s.
/// Returns nullopt when either degree of freedom is too short to profile.
inline std::optional<HolonomicProfiles> build_holonomic_profiles(
    const Path& path, const RobotConstraints& constraints) {
  constraints.validate();
  constexpr double kEps = 1e-12;
  constexpr double kSyncTol = 1e-6;

  const PathDisplacement disp = total_displacement(path);
  HolonomicProfiles out;
  out.dominant_direction = dominant_direction_of(path);
  out.rotation_sign = disp.delta_h_signed > 0.0 ? 1.0
                      : disp.delta_h_signed < 0.0 ? -1.0 : 0.0;
  out.limits = allocate_power(constraints, disp.delta_x, disp.delta_h,
                              out.dominant_direction);

  const double a_lin =
      elliptical_limit(constraints.a_max_x, constraints.a_max_y, out.dominant_direction);
  const double j_lin =
      elliptical_limit(constraints.j_max_x, constraints.j_max_y, out.dominant_direction);

  const bool has_translation = disp.delta_x > kEps;
  const bool has_rotation = disp.delta_h > kEps;

  if (has_translation) {
    auto p = build_profile(disp.delta_x, out.limits.v_linear_eff, a_lin, j_lin);
    if (!p) return std::nullopt;
    out.translational = *p;
  }
  if (has_rotation) {
    auto p = build_profile(disp.delta_h, out.limits.v_h_eff, constraints.a_max_h,
                           constraints.j_max_h);
    if (!p) return std::nullopt;
    out.angular = *p;
  }

  if (has_translation && has_rotation) {
    const double tt = out.translational.total_time();
    const double ta = out.angular.total_time();
    if (std::abs(tt - ta) > kSyncTol) {
      if (tt < ta) {
        out.translational = detail::stretch_to_duration(
            disp.delta_x, out.limits.v_linear_eff, a_lin, j_lin, ta, kSyncTol);
      } else {
        out.angular = detail::stretch_to_duration(disp.delta_h, out.limits.v_h_eff,
                                                  constraints.a_max_h,
                                                  constraints.j_max_h, tt, kSyncTol);
      }
    }
  }
  out.total_time = std::max(out.translational.total_time(), out.angular.total_time());
  return out;
}

}  // namespace holo
