#pragma once

#include <algorithm>
#include <cmath>

#include "holo/geometry.hpp"

namespace holo {

/// Gains for the time-varying controller. u0 is the launch output fraction
/// that avoids wheel slip from rest; a_rampup raises the proportional cap as
/// the normalized error falls.
struct ControllerGains {
  double kp = 0.0;
  double ki = 0.0;
  double kd = 0.0;
  double u0 = 1.0;
  double a_rampup = 0.0;

  void validate() const {
    if (kp < 0.0 || ki < 0.0 || kd < 0.0 || a_rampup < 0.0)
      throw InvalidConstraint("gains must be nonnegative");
    if (!(u0 > 0.0) || u0 > 1.0)
      throw InvalidConstraint("u0 must be in (0, 1]");
  }
};

/// Plain PID gains for the baseline controller.
struct PidGains {
  double kp = 0.0;
  double ki = 0.0;
  double kd = 0.0;
};

/// Per-axis controller state. Stepping is pure: state in, state out.
struct ControllerState {
  double t = 0.0;                     // elapsed since controller start, s
  double total_time_estimate = 1.0;   // T, from the motion profiles
  double integral_accumulator = 0.0;  // normalized-error seconds
  double previous_error = 0.0;        // normalized error at last step
  double starting_error_scaled = 1.0; // denominator, raw units (in or rad)
  double last_output = 0.0;
};

/// Scale a raw starting error so near-zero starts stay stable.
/// Below 8.5 in the boost decays hyperbolically; above it is a constant
/// 0.746 in. Strictly positive for every x >= 0.
inline double scale_starting_error(double x) {
  if (x < 0.0) throw InvalidError("starting error must be nonnegative");
  if (x < 8.5) return x + 5.0 / (0.6 * (x + 0.9) + 1.0);
  return x + 0.746;
}

struct ControlStep {
  double output = 0.0;  // fraction in [-1, 1]
  ControllerState state;
};

inline double clamp_output(double u) { return std::clamp(u, -1.0, 1.0); }

/// One step of the time-varying controller.
///
/// The error is normalized against the scaled starting error and handled as
/// a magnitude; the sign is reapplied to the summed output. The integral
/// term grows as sqrt of the accumulated error and strengthens with t/T;
/// the derivative term is divided by (t/T + 1)^4 so braking is strongest
/// while the motion is young. The accumulator freezes while the output is
/// saturated.
inline ControlStep pitdt_step(const ControllerGains& gains, ControllerState state,
                              double current_error, double dt) {
  if (!(dt > 0.0)) throw InvalidTimestep("dt must be positive");
  if (!(state.total_time_estimate > 0.0)) throw InvalidState("T must be positive");

  const double e = std::abs(current_error) / state.starting_error_scaled;
  const double sign = current_error > 0.0 ? 1.0 : current_error < 0.0 ? -1.0 : 0.0;
  const double time_ratio = state.t / state.total_time_estimate + 1.0;

  const double ramp_cap = std::min(gains.u0 + gains.a_rampup * (1.0 - e), 1.0);
  const double u_p = gains.kp * ramp_cap * e;

  const double accumulated = state.integral_accumulator + e * dt;
  const double u_i = gains.ki * std::sqrt(accumulated) * time_ratio;

  const double de_dt = (e - state.previous_error) / dt;
  const double u_d = gains.kd * de_dt / (time_ratio * time_ratio * time_ratio * time_ratio);

  const double raw = sign * (u_p + u_i + u_d);
  ControlStep step;
  step.output = clamp_output(raw);
  step.state = state;
  if (std::abs(raw) <= 1.0) step.state.integral_accumulator = accumulated;
  step.state.previous_error = e;
  step.state.t = state.t + dt;
  step.state.last_output = step.output;
  return step;
}

/// Baseline parallel-form PID on the same normalized (but signed) error.
/// Anti-windup clamps the accumulator so ki * |accumulator| <= 1.
inline ControlStep pid_step(const PidGains& gains, ControllerState state,
                            double current_error, double dt) {
  if (!(dt > 0.0)) throw InvalidTimestep("dt must be positive");
  if (!(state.total_time_estimate > 0.0)) throw InvalidState("T must be positive");

  const double e = current_error / state.starting_error_scaled;
  double accumulated = state.integral_accumulator + e * dt;
  if (gains.ki > 0.0)
    accumulated = std::clamp(accumulated, -1.0 / gains.ki, 1.0 / gains.ki);
  const double de_dt = (e - state.previous_error) / dt;

  ControlStep step;
  step.output = clamp_output(gains.kp * e + gains.ki * accumulated + gains.kd * de_dt);
  step.state = state;
  step.state.integral_accumulator = accumulated;
  step.state.previous_error = e;
  step.state.t = state.t + dt;
  step.state.last_output = step.output;
  return step;
}

/// States for the three axis controllers of one motion.
struct AxisStates {
  ControllerState x;
  ControllerState y;
  ControllerState heading;
};

/// Build the x, y, and heading controller states for a motion from `start`
/// to `target` with estimated duration T. Heading errors pass through the
/// scaling function in inch-equivalents (arc length at `heading_radius_in`)
/// since its constants are calibrated in inches.
/// `signed_errors` matches previous_error to the convention of the stepper
/// that will consume the states: magnitudes for pitdt_step, signed for
/// pid_step. Without it the first step sees a spurious derivative kick.
inline AxisStates make_axis_controllers(const Pose2D& target, const Pose2D& start,
                                        double total_time_estimate,
                                        double heading_radius_in,
                                        bool signed_errors = false) {
  AxisStates s;
  s.x.starting_error_scaled = scale_starting_error(std::abs(target.x - start.x));
  s.y.starting_error_scaled = scale_starting_error(std::abs(target.y - start.y));
  const double dh = wrap_angle(target.heading - start.heading);
  s.heading.starting_error_scaled =
      scale_starting_error(std::abs(dh) * heading_radius_in) / heading_radius_in;
  s.x.total_time_estimate = total_time_estimate;
  s.y.total_time_estimate = total_time_estimate;
  s.heading.total_time_estimate = total_time_estimate;
  // Controllers start with the full error outstanding.
  const double ex = target.x - start.x;
  const double ey = target.y - start.y;
  s.x.previous_error = (signed_errors ? ex : std::abs(ex)) / s.x.starting_error_scaled;
  s.y.previous_error = (signed_errors ? ey : std::abs(ey)) / s.y.starting_error_scaled;
  s.heading.previous_error =
      (signed_errors ? dh : std::abs(dh)) / s.heading.starting_error_scaled;
  return s;
}

/// Fallback duration estimate when no profile exists: a triangular velocity
/// profile per axis, slowest axis governs.
inline double triangular_time_estimate(const Pose2D& target, const Pose2D& start,
                                       double a_max_x, double a_max_y, double a_max_h) {
  const double tx = 2.0 * std::sqrt(std::abs(target.x - start.x) / a_max_x);
  const double ty = 2.0 * std::sqrt(std::abs(target.y - start.y) / a_max_y);
  const double th =
      2.0 * std::sqrt(std::abs(wrap_angle(target.heading - start.heading)) / a_max_h);
  return std::max({tx, ty, th, 1e-3});
}

}  // namespace holo
