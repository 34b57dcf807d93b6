#pragma once

#include <array>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "holo/controller.hpp"
#include "holo/mecanum.hpp"
#include "holo/profile.hpp"
#include "holo/pursuit.hpp"
#include "holo/simulator.hpp"

namespace holo {

/// Which pieces of the architecture a trial exercises. The *System modes
/// follow a path through pure pursuit; the *Only modes drive straight at
/// the final pose (the controller-isolation tests).
enum class RunMode { PitdtSystem, PidSystem, PitdtOnly, PidOnly };

inline const char* to_string(RunMode m) {
  switch (m) {
    case RunMode::PitdtSystem: return "pitdt-system";
    case RunMode::PidSystem: return "pid-system";
    case RunMode::PitdtOnly: return "pitdt-only";
    default: return "pid-only";
  }
}

/// The "robot stopped at the target" rule: within threshold_in of the goal
/// and slower than v_negligible, continuously for dwell_s.
struct SetpointParams {
  double threshold_in = 1.0;
  double v_negligible = 0.5;  // in/s
  double dwell_s = 0.1;
};

struct GainSet {
  ControllerGains pitdt_xy;
  ControllerGains pitdt_heading;
  PidGains pid_xy;
  PidGains pid_heading;
};

struct RunPlan {
  explicit RunPlan(Path p) : path(std::move(p)) {}

  Path path;
  RunMode mode = RunMode::PitdtSystem;
  GainSet gains;
  double lookahead_in = 12.0;
  double timeout_s = 30.0;
  double heading_radius_in = 8.85;  // heading <-> inch-equivalent conversion
  bool renormalize_each_update = false;
  SetpointParams setpoint;
};

struct TrialSample {
  double t = 0.0;
  Pose2D pose;                // ground truth
  Pose2D estimated_pose;      // odometry's belief
  double target_error_in = 0.0;  // XY distance to the path's final pose
  Twist2D commanded_twist;    // voltage-equivalent twist handed to the wheels
  WheelCommand wheel_volts;
  Twist2D realized_twist;     // plant truth over the preceding period
  std::array<double, 3> ff_volts{};  // x, y, heading (robot frame)
  std::array<double, 3> fb_volts{};
  long long slip_events = 0;  // cumulative
};

struct TrialRecord {
  std::vector<TrialSample> samples;
  bool reached = false;
  double t_final = 0.0;  // dwell start when reached, last sample time on timeout
  long long slip_events = 0;
  long long profile_sample_count = 0;
  long long pursuit_query_count = 0;
  double total_time_estimate = 0.0;
  bool profile_used = false;
  std::uint64_t seed = 0;
};

/// Start of the trailing window in which the samples continuously satisfy
/// the setpoint rule for at least dwell_s, if there is one.
inline std::optional<double> setpoint_dwell_start(std::span<const TrialSample> samples,
                                                  const SetpointParams& p) {
  if (samples.empty()) return std::nullopt;
  double run_start = samples.back().t;
  for (auto it = samples.rbegin(); it != samples.rend(); ++it) {
    const double speed = std::hypot(it->realized_twist.vx, it->realized_twist.vy);
    if (it->target_error_in > p.threshold_in || speed > p.v_negligible) break;
    run_start = it->t;
  }
  if (samples.back().t - run_start >= p.dwell_s) return run_start;
  return std::nullopt;
}

inline bool setpoint_reached(std::span<const TrialSample> record_tail,
                             double threshold_in = 1.0, double v_negligible = 0.5,
                             double dwell_s = 0.1) {
  return setpoint_dwell_start(record_tail,
                              SetpointParams{threshold_in, v_negligible, dwell_s})
      .has_value();
}

namespace detail {

inline std::pair<double, double> world_to_robot(double wx, double wy, double heading) {
  const double c = std::cos(heading), s = std::sin(heading);
  return {c * wx + s * wy, -s * wx + c * wy};
}

}  // namespace detail

/// Run one closed-loop trial: feedforward from the motion profiles (when the
/// mode includes them and the path is long enough) superimposed with the
/// per-axis feedback controllers, through inverse kinematics into the plant.
inline TrialRecord run_trial(const RunPlan& plan, const PlantConfig& config,
                             std::uint64_t seed) {
  config.validate();
  plan.gains.pitdt_xy.validate();
  plan.gains.pitdt_heading.validate();
  if (!(plan.timeout_s > 0.0)) throw InvalidConstraint("timeout must be positive");

  const Path& path = plan.path;
  const Pose2D start = path.start();
  const Pose2D goal = path.end();
  const RobotConstraints& c = config.constraints;
  const double dt = config.loop_dt;
  const double v_battery = c.v_battery;

  const bool is_pitdt =
      plan.mode == RunMode::PitdtSystem || plan.mode == RunMode::PitdtOnly;
  const bool use_pursuit =
      plan.mode == RunMode::PitdtSystem || plan.mode == RunMode::PidSystem;

  // Profiles: sampled for feedforward only in the full system mode, but the
  // time-varying controller always wants T, so pitdt-only builds them too.
  std::optional<HolonomicProfiles> profiles;
  if (is_pitdt) profiles = build_holonomic_profiles(path, c);

  TrialRecord record;
  record.seed = seed;
  record.profile_used = profiles.has_value() && plan.mode == RunMode::PitdtSystem;
  if (profiles) {
    record.total_time_estimate = profiles->total_time;
  } else {
    const double a_lin_x = c.a_max_x, a_lin_y = c.a_max_y;
    record.total_time_estimate =
        triangular_time_estimate(goal, start, a_lin_x, a_lin_y, c.a_max_h);
  }

  AxisStates axes = make_axis_controllers(goal, start, record.total_time_estimate,
                                          plan.heading_radius_in, !is_pitdt);
  PursuitState pursuit{plan.lookahead_in, 0.0};
  PlantState plant = make_plant_state(config, seed, start);
  Pose2D estimated = start;
  std::array<long long, 3> prev_counts = plant.encoder_counts;

  const std::size_t max_steps = static_cast<std::size_t>(plan.timeout_s / dt) + 2;
  record.samples.reserve(max_steps);

  for (std::size_t k = 0;; ++k) {
    const double t = static_cast<double>(k) * dt;
    if (k > 0) {
      const OdometryDeltas deltas = deltas_from_counts(
          static_cast<double>(plant.encoder_counts[0] - prev_counts[0]),
          static_cast<double>(plant.encoder_counts[1] - prev_counts[1]),
          static_cast<double>(plant.encoder_counts[2] - prev_counts[2]),
          config.odometry);
      estimated = odometry_update(estimated, deltas, config.odometry);
      prev_counts = plant.encoder_counts;
    }

    // Feedforward, open loop: indexed by the profile's own arc position and
    // its own predicted heading, never by the measured pose.
    std::array<double, 3> ff{};
    if (record.profile_used) {
      const KinematicState lin = profiles->translational.sample(t);
      const KinematicState ang = profiles->angular.sample(t);
      ++record.profile_sample_count;
      const auto [tx, ty] = tangent_at_arc_length(path, lin.position);
      const double heading_ff =
          wrap_angle(start.heading + profiles->rotation_sign * ang.position);
      const auto [rvx, rvy] =
          detail::world_to_robot(tx * lin.velocity, ty * lin.velocity, heading_ff);
      const auto [rax, ray] = detail::world_to_robot(tx * lin.acceleration,
                                                     ty * lin.acceleration, heading_ff);
      ff[0] = rvx / c.kv_x + rax / c.ka_x;
      ff[1] = rvy / c.kv_y + ray / c.ka_y;
      ff[2] = profiles->rotation_sign *
              (ang.velocity / c.kv_h + ang.acceleration / c.ka_h);
    }

    Pose2D target = goal;
    if (use_pursuit) {
      LookaheadResult look = find_lookahead(path, estimated, pursuit);
      target = look.target;
      pursuit = look.state;
      ++record.pursuit_query_count;
    }

    const double err_x = target.x - estimated.x;
    const double err_y = target.y - estimated.y;
    const double err_h = wrap_angle(target.heading - estimated.heading);

    if (plan.renormalize_each_update) {
      axes.x.starting_error_scaled = scale_starting_error(std::abs(err_x));
      axes.y.starting_error_scaled = scale_starting_error(std::abs(err_y));
      axes.heading.starting_error_scaled =
          scale_starting_error(std::abs(err_h) * plan.heading_radius_in) /
          plan.heading_radius_in;
    }

    ControlStep sx, sy, sh;
    if (is_pitdt) {
      sx = pitdt_step(plan.gains.pitdt_xy, axes.x, err_x, dt);
      sy = pitdt_step(plan.gains.pitdt_xy, axes.y, err_y, dt);
      sh = pitdt_step(plan.gains.pitdt_heading, axes.heading, err_h, dt);
    } else {
      sx = pid_step(plan.gains.pid_xy, axes.x, err_x, dt);
      sy = pid_step(plan.gains.pid_xy, axes.y, err_y, dt);
      sh = pid_step(plan.gains.pid_heading, axes.heading, err_h, dt);
    }
    axes.x = sx.state;
    axes.y = sy.state;
    axes.heading = sh.state;

    const auto [fb_x, fb_y] = detail::world_to_robot(
        sx.output * v_battery, sy.output * v_battery, estimated.heading);
    const std::array<double, 3> fb{fb_x, fb_y, sh.output * v_battery};

    const Twist2D voltage_twist{c.kv_x * (ff[0] + fb[0]), c.kv_y * (ff[1] + fb[1]),
                                c.kv_h * (ff[2] + fb[2])};
    const WheelCommand wheels = inverse_kinematics(voltage_twist, config.mecanum,
                                                   v_battery);

    TrialSample sample;
    sample.t = t;
    sample.pose = plant.true_pose;
    sample.estimated_pose = estimated;
    sample.target_error_in = distance_xy(plant.true_pose, goal);
    sample.commanded_twist = voltage_twist;
    sample.wheel_volts = wheels;
    sample.realized_twist = plant.true_twist;
    sample.ff_volts = ff;
    sample.fb_volts = fb;
    sample.slip_events = plant.slip_events;
    record.samples.push_back(sample);

    if (auto dwell = setpoint_dwell_start(record.samples, plan.setpoint)) {
      record.reached = true;
      record.t_final = *dwell;
      break;
    }
    if (t >= plan.timeout_s) {
      record.reached = false;
      record.t_final = t;
      break;
    }
    plant = plant_step(plant, wheels, config);
  }
  record.slip_events = plant.slip_events;
  return record;
}

/// Trial CSV: one row per control period.
inline std::string trial_to_csv(const TrialRecord& record) {
  std::string out = "t,x,y,heading,error_in,vx,vy,omega,v_fl,v_fr,v_bl,v_br\n";
  char line[320];
  for (const TrialSample& s : record.samples) {
    std::snprintf(line, sizeof(line),
                  "%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f\n",
                  s.t, s.pose.x, s.pose.y, s.pose.heading, s.target_error_in,
                  s.commanded_twist.vx, s.commanded_twist.vy, s.commanded_twist.omega,
                  s.wheel_volts.front_left, s.wheel_volts.front_right,
                  s.wheel_volts.back_left, s.wheel_volts.back_right);
    out += line;
  }
  return out;
}

}  // namespace holo
