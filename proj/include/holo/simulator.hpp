#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <random>

#include "holo/geometry.hpp"
#include "holo/mecanum.hpp"
#include "holo/profile.hpp"

namespace holo {

/// Deterministic plant model configuration. Dynamics are first-order affine
/// per chassis axis, v' = ka * (V - v/kv), with a traction clamp on realized
/// acceleration and a Coulomb-friction voltage deadband (set friction_volts
/// to 0 for the pure affine model). Noise is seeded and reproducible.
struct PlantConfig {
  RobotConstraints constraints;
  MecanumGeometry mecanum;
  OdometryGeometry odometry;
  double slip_accel_limit = 100.0;   // in/s^2, x and y axes
  double slip_alpha_limit = 12.0;    // rad/s^2, heading
  double friction_volts = 0.8;       // static/kinetic deadband per axis, V
  std::uint64_t noise_seed = 1;
  double velocity_noise_sd = 0.02;   // fraction of realized velocity
  double encoder_noise_sd = 0.5;     // counts
  double loop_dt = 0.02;             // s

  void validate() const {
    constraints.validate();
    if (!(loop_dt > 0.0)) throw InvalidConstraint("loop_dt must be positive");
    if (velocity_noise_sd < 0.0 || encoder_noise_sd < 0.0 || friction_volts < 0.0 ||
        !(slip_accel_limit > 0.0) || !(slip_alpha_limit > 0.0))
      throw InvalidConstraint("plant parameters out of range");
  }
};

/// Full simulator state; a value that is copied freely. The RNG lives here so
/// a run is reproducible from (config, seed, command sequence) alone.
struct PlantState {
  Pose2D true_pose;
  Twist2D true_twist;                         // robot frame
  std::array<long long, 3> encoder_counts{};  // left, right, back
  double sim_time = 0.0;
  long long slip_events = 0;

  std::array<double, 3> wheel_travel{};  // true cumulative pod travel, in
  std::mt19937_64 rng;
};

inline PlantState make_plant_state(const PlantConfig& config, std::uint64_t seed,
                                   const Pose2D& start = Pose2D{}) {
  config.validate();
  PlantState s;
  s.true_pose = start;
  s.rng.seed(config.noise_seed + 0x9e3779b97f4a7c15ULL * (seed + 1));
  return s;
}

namespace detail {

inline double gaussian(std::mt19937_64& rng) {
  // Box-Muller; plain and identical wherever the run is replayed.
  const double u1 = 1.0 - (rng() >> 11) * 0x1.0p-53;  // (0, 1]
  const double u2 = (rng() >> 11) * 0x1.0p-53;        // [0, 1)
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

inline double sign_of(double v) { return v > 0.0 ? 1.0 : v < 0.0 ? -1.0 : 0.0; }

// One axis of the friction + affine motor model. Returns the new velocity;
// `slipped` reports a traction clamp.
inline double step_axis_velocity(double v, double volts, double kv, double ka,
                                 double v_max, double slip_limit, double friction_volts,
                                 double dt, bool& slipped) {
  double accel;
  if (v == 0.0 && std::abs(volts) <= friction_volts) {
    accel = 0.0;  // static friction holds
  } else {
    const double s = v != 0.0 ? sign_of(v) : sign_of(volts);
    accel = ka * (volts - friction_volts * s - v / kv);
  }
  const double clamped = std::clamp(accel, -slip_limit, slip_limit);
  slipped = clamped != accel;
  double v_next = v + clamped * dt;
  // Friction can stop the axis but never drive it backwards.
  if (v != 0.0 && sign_of(v_next) != sign_of(v) && std::abs(volts) <= friction_volts)
    v_next = 0.0;
  return std::clamp(v_next, -v_max, v_max);
}

}  // namespace detail

/// Advance the plant one control period under the given wheel voltages.
inline PlantState plant_step(PlantState state, const WheelCommand& command,
                             const PlantConfig& config) {
  const RobotConstraints& c = config.constraints;
  const double dt = config.loop_dt;

  // Wheel voltages back to chassis-axis voltages.
  const Twist2D veq = forward_kinematics(command, config.mecanum);
  const double volts_x = veq.vx / c.kv_x;
  const double volts_y = veq.vy / c.kv_y;
  const double volts_h = veq.omega / c.kv_h;

  bool sx = false, sy = false, sh = false;
  Twist2D v = state.true_twist;
  v.vx = detail::step_axis_velocity(v.vx, volts_x, c.kv_x, c.ka_x, c.v_max_x,
                                    config.slip_accel_limit, config.friction_volts,
                                    dt, sx);
  v.vy = detail::step_axis_velocity(v.vy, volts_y, c.kv_y, c.ka_y, c.v_max_y,
                                    config.slip_accel_limit, config.friction_volts,
                                    dt, sy);
  v.omega = detail::step_axis_velocity(v.omega, volts_h, c.kv_h, c.ka_h, c.v_max_h,
                                       config.slip_alpha_limit, config.friction_volts,
                                       dt, sh);
  state.slip_events += (sx ? 1 : 0) + (sy ? 1 : 0) + (sh ? 1 : 0);

  if (config.velocity_noise_sd > 0.0) {
    v.vx *= 1.0 + config.velocity_noise_sd * detail::gaussian(state.rng);
    v.vy *= 1.0 + config.velocity_noise_sd * detail::gaussian(state.rng);
    v.omega *= 1.0 + config.velocity_noise_sd * detail::gaussian(state.rng);
    v.vx = std::clamp(v.vx, -c.v_max_x, c.v_max_x);
    v.vy = std::clamp(v.vy, -c.v_max_y, c.v_max_y);
    v.omega = std::clamp(v.omega, -c.v_max_h, c.v_max_h);
  }

  // Constant twist over the step: advance pose by the exponential and the
  // tracking pods by the matching body-frame distances.
  const OdometryGeometry& og = config.odometry;
  state.wheel_travel[0] += (v.vy - og.track_half_width * v.omega) * dt;
  state.wheel_travel[1] += (v.vy + og.track_half_width * v.omega) * dt;
  state.wheel_travel[2] += (v.vx + og.back_offset * v.omega) * dt;

  const double dtheta = v.omega * dt;
  double sfac, cfac;
  if (std::abs(dtheta) < 1e-6) {
    sfac = 1.0 - dtheta * dtheta / 6.0;
    cfac = dtheta / 2.0 - dtheta * dtheta * dtheta / 24.0;
  } else {
    sfac = std::sin(dtheta) / dtheta;
    cfac = (1.0 - std::cos(dtheta)) / dtheta;
  }
  const double bx = v.vx * dt, by = v.vy * dt;
  const double lx = bx * sfac - by * cfac;
  const double ly = bx * cfac + by * sfac;
  const double ch = std::cos(state.true_pose.heading);
  const double sh2 = std::sin(state.true_pose.heading);
  state.true_pose = Pose2D{state.true_pose.x + lx * ch - ly * sh2,
                           state.true_pose.y + lx * sh2 + ly * ch,
                           wrap_angle(state.true_pose.heading + dtheta)};
  state.true_twist = v;

  for (int i = 0; i < 3; ++i) {
    double counts = state.wheel_travel[i] * og.counts_per_inch;
    if (config.encoder_noise_sd > 0.0)
      counts += config.encoder_noise_sd * detail::gaussian(state.rng);
    state.encoder_counts[i] = std::llround(counts);
  }
  state.sim_time += dt;
  return state;
}

/// Chassis-axis selector for system identification.
enum class Axis { X, Y, Heading };

enum class SysidStatus { Ok, QuasiStaticViolation, NoSteadyState };

struct SysidResult {
  double value = 0.0;
  SysidStatus status = SysidStatus::Ok;
};

namespace detail {

inline WheelCommand axis_voltage_command(Axis axis, double volts,
                                         const PlantConfig& config) {
  const RobotConstraints& c = config.constraints;
  Twist2D veq;
  switch (axis) {
    case Axis::X: veq.vx = c.kv_x * volts; break;
    case Axis::Y: veq.vy = c.kv_y * volts; break;
    case Axis::Heading: veq.omega = c.kv_h * volts; break;
  }
  return inverse_kinematics(veq, config.mecanum, c.v_battery);
}

inline double axis_velocity(const PlantState& s, Axis axis) {
  switch (axis) {
    case Axis::X: return s.true_twist.vx;
    case Axis::Y: return s.true_twist.vy;
    default: return s.true_twist.omega;
  }
}

inline double axis_kv(const PlantConfig& c, Axis axis) {
  switch (axis) {
    case Axis::X: return c.constraints.kv_x;
    case Axis::Y: return c.constraints.kv_y;
    default: return c.constraints.kv_h;
  }
}

inline double axis_ka(const PlantConfig& c, Axis axis) {
  switch (axis) {
    case Axis::X: return c.constraints.ka_x;
    case Axis::Y: return c.constraints.ka_y;
    default: return c.constraints.ka_h;
  }
}

inline double axis_v_max(const PlantConfig& c, Axis axis) {
  switch (axis) {
    case Axis::X: return c.constraints.v_max_x;
    case Axis::Y: return c.constraints.v_max_y;
    default: return c.constraints.v_max_h;
  }
}

}  // namespace detail

/// Quasi-static voltage ramp test: slope of velocity vs voltage by least
/// squares. A ramp shorter than 20 plant time constants still reports a
/// value but carries a QuasiStaticViolation warning.
inline SysidResult sysid_kv(const PlantConfig& config, Axis axis,
                            double ramp_duration_s = 40.0,
                            std::uint64_t seed = 0) {
  const double tau = detail::axis_kv(config, axis) / detail::axis_ka(config, axis);
  SysidResult result;
  result.status = ramp_duration_s < 20.0 * tau ? SysidStatus::QuasiStaticViolation
                                               : SysidStatus::Ok;
  if (ramp_duration_s <= 0.0) return result;

  PlantState state = make_plant_state(config, seed);
  const double v_battery = config.constraints.v_battery;
  const double v_ceiling = 0.85 * detail::axis_v_max(config, axis);
  double sum_v = 0, sum_u = 0, sum_uu = 0, sum_uv = 0;
  long n = 0;
  for (double t = 0.0; t < ramp_duration_s; t += config.loop_dt) {
    const double volts = v_battery * t / ramp_duration_s;
    state = plant_step(state, detail::axis_voltage_command(axis, volts, config), config);
    const double vel = detail::axis_velocity(state, axis);
    // Skip the stiction region and the v_max saturation region.
    if (volts <= config.friction_volts + 0.2 || std::abs(vel) >= v_ceiling) continue;
    sum_u += volts;
    sum_v += vel;
    sum_uu += volts * volts;
    sum_uv += volts * vel;
    ++n;
  }
  if (n < 2) {
    result.status = SysidStatus::QuasiStaticViolation;
    return result;
  }
  const double denom = n * sum_uu - sum_u * sum_u;
  result.value = (n * sum_uv - sum_u * sum_v) / denom;
  return result;
}

/// Full-voltage steady-state velocity: drives at v_battery until the
/// per-step change stays under `tolerance` for half a second.
inline SysidResult sysid_vmax(const PlantConfig& config, Axis axis,
                              double tolerance = 0.002, double timeout_s = 30.0,
                              std::uint64_t seed = 0) {
  PlantState state = make_plant_state(config, seed);
  const WheelCommand cmd =
      detail::axis_voltage_command(axis, config.constraints.v_battery, config);
  double prev = 0.0;
  double stable_span = 0.0;
  for (double t = 0.0; t < timeout_s; t += config.loop_dt) {
    state = plant_step(state, cmd, config);
    const double vel = detail::axis_velocity(state, axis);
    stable_span = std::abs(vel - prev) < tolerance ? stable_span + config.loop_dt : 0.0;
    prev = vel;
    if (stable_span >= 0.5) return {vel, SysidStatus::Ok};
  }
  return {prev, SysidStatus::NoSteadyState};
}

}  // namespace holo
