#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "holo/config.hpp"
#include "holo/orchestrator.hpp"
#include "holo/scenarios.hpp"

using namespace holo;

namespace {

RunConfig test_config() {
  RunConfig c = default_run_config();
  return c;
}

TrialSample make_sample(double t, double error, double speed) {
  TrialSample s;
  s.t = t;
  s.target_error_in = error;
  s.realized_twist = {speed, 0.0, 0.0};
  return s;
}

}  // namespace

TEST_CASE("setpoint rule needs both bounds and the dwell") {
  std::vector<TrialSample> tail;
  SECTION("inside both bounds for the dwell window") {
    for (int i = 0; i <= 5; ++i) tail.push_back(make_sample(i * 0.02, 0.9, 0.1));
    CHECK(setpoint_reached(tail));
  }
  SECTION("passing through at speed does not count") {
    for (int i = 0; i <= 5; ++i) tail.push_back(make_sample(i * 0.02, 0.9, 5.0));
    CHECK_FALSE(setpoint_reached(tail));
  }
  SECTION("stopped but outside the threshold") {
    for (int i = 0; i <= 5; ++i) tail.push_back(make_sample(i * 0.02, 1.2, 0.0));
    CHECK_FALSE(setpoint_reached(tail));
  }
  SECTION("dwell not yet satisfied") {
    for (int i = 0; i <= 3; ++i) tail.push_back(make_sample(i * 0.02, 0.9, 0.1));
    CHECK_FALSE(setpoint_reached(tail));
  }
}

TEST_CASE("a start already at the goal is reached at t = 0") {
  const RunConfig c = test_config();
  // 0.02 in of error: the correction command sits inside the friction
  // deadband, so the robot never moves and the dwell completes immediately.
  const Path tiny = Path::from_waypoints({{0, 0, 0}, {0.02, 0, 0}});
  const TrialRecord rec = run_trial(c.make_plan(tiny, RunMode::PitdtSystem),
                                    c.plant, 1);
  CHECK(rec.reached);
  CHECK(rec.t_final == Catch::Approx(0.0).margin(1e-9));
}

TEST_CASE("a short path completes quickly under feedback alone") {
  const RunConfig c = test_config();
  const Path tiny = Path::from_waypoints({{0, 0, 0}, {0.5, 0, 0}});
  const RunPlan plan = c.make_plan(tiny, RunMode::PitdtSystem);
  const TrialRecord rec = run_trial(plan, c.plant, 1);
  CHECK(rec.reached);
  CHECK(rec.t_final < 1.0);
  CHECK_FALSE(rec.profile_used);        // profiling refused the short path
  CHECK(rec.profile_sample_count == 0);
}

TEST_CASE("modes touch only their own machinery") {
  const RunConfig c = test_config();
  const Path path = nine_foot_path();
  SECTION("pid system never samples profiles") {
    const TrialRecord rec = run_trial(c.make_plan(path, RunMode::PidSystem), c.plant, 1);
    CHECK(rec.profile_sample_count == 0);
    CHECK(rec.pursuit_query_count > 0);
  }
  SECTION("pitdt-only never queries pursuit") {
    const TrialRecord rec = run_trial(c.make_plan(path, RunMode::PitdtOnly), c.plant, 1);
    CHECK(rec.pursuit_query_count == 0);
    CHECK(rec.profile_sample_count == 0);  // profiles inform T only
    CHECK(rec.total_time_estimate > 0.0);
  }
  SECTION("full system uses both") {
    const TrialRecord rec =
        run_trial(c.make_plan(path, RunMode::PitdtSystem), c.plant, 1);
    CHECK(rec.profile_used);
    CHECK(rec.profile_sample_count > 0);
    CHECK(rec.pursuit_query_count > 0);
  }
}

TEST_CASE("superposition: zero gains isolate the feedforward") {
  RunConfig c = test_config();
  c.gains.pitdt_xy = ControllerGains{0.0, 0.0, 0.0, 0.5, 0.0};
  c.gains.pitdt_heading = ControllerGains{0.0, 0.0, 0.0, 0.5, 0.0};
  const TrialRecord rec =
      run_trial(c.make_plan(nine_foot_path(), RunMode::PitdtSystem), c.plant, 1);
  REQUIRE(rec.profile_used);
  for (const TrialSample& s : rec.samples) {
    CHECK(s.fb_volts[0] == 0.0);
    CHECK(s.fb_volts[1] == 0.0);
    CHECK(s.fb_volts[2] == 0.0);
    CHECK(s.commanded_twist.vy ==
          c.plant.constraints.kv_y * (s.ff_volts[1] + s.fb_volts[1]));
  }
}

TEST_CASE("superposition: no profiling isolates the feedback") {
  const RunConfig c = test_config();
  const TrialRecord rec =
      run_trial(c.make_plan(nine_foot_path(), RunMode::PidSystem), c.plant, 1);
  for (const TrialSample& s : rec.samples) {
    CHECK(s.ff_volts[0] == 0.0);
    CHECK(s.ff_volts[1] == 0.0);
    CHECK(s.ff_volts[2] == 0.0);
  }
}

TEST_CASE("trials are reproducible bit for bit") {
  const RunConfig c = test_config();
  const RunPlan plan = c.make_plan(default_scenarios()[0].path, RunMode::PitdtSystem);
  const TrialRecord a = run_trial(plan, c.plant, 99);
  const TrialRecord b = run_trial(plan, c.plant, 99);
  REQUIRE(a.samples.size() == b.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    CHECK(a.samples[i].pose.x == b.samples[i].pose.x);
    CHECK(a.samples[i].pose.y == b.samples[i].pose.y);
    CHECK(a.samples[i].wheel_volts.front_left == b.samples[i].wheel_volts.front_left);
  }
  CHECK(a.t_final == b.t_final);
  CHECK(a.slip_events == b.slip_events);
}

TEST_CASE("wheel commands stay inside the battery") {
  const RunConfig c = test_config();
  for (RunMode mode : {RunMode::PitdtSystem, RunMode::PidSystem}) {
    const TrialRecord rec = run_trial(c.make_plan(nine_foot_path(), mode), c.plant, 3);
    for (const TrialSample& s : rec.samples)
      CHECK(s.wheel_volts.max_abs() <= c.plant.constraints.v_battery * (1 + 1e-12));
  }
}

TEST_CASE("timestamps advance at the loop period") {
  const RunConfig c = test_config();
  const TrialRecord rec =
      run_trial(c.make_plan(nine_foot_path(), RunMode::PitdtSystem), c.plant, 1);
  for (std::size_t i = 1; i < rec.samples.size(); ++i)
    CHECK(rec.samples[i].t - rec.samples[i - 1].t ==
          Catch::Approx(c.plant.loop_dt).margin(1e-12));
}

TEST_CASE("odometry drift stays under half a percent of path length") {
  RunConfig c = test_config();
  c.plant.velocity_noise_sd = 0.0;
  c.plant.encoder_noise_sd = 0.0;
  c.plant.odometry.counts_per_inch = 1e5;  // quantization effectively off
  for (const Scenario& sc : default_scenarios()) {
    const TrialRecord rec = run_trial(c.make_plan(sc.path, RunMode::PitdtSystem),
                                      c.plant, 1);
    const TrialSample& last = rec.samples.back();
    const double err = std::hypot(last.estimated_pose.x - last.pose.x,
                                  last.estimated_pose.y - last.pose.y);
    CHECK(err < 0.005 * sc.path.total_length());
  }
}

TEST_CASE("trial csv has the documented columns") {
  const RunConfig c = test_config();
  const TrialRecord rec =
      run_trial(c.make_plan(nine_foot_path(), RunMode::PidSystem), c.plant, 1);
  const std::string csv = trial_to_csv(rec);
  CHECK(csv.rfind("t,x,y,heading,error_in,vx,vy,omega,v_fl,v_fr,v_bl,v_br\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') ==
        static_cast<long>(rec.samples.size()) + 1);
}
