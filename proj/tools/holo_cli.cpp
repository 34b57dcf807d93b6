// Command-line front end: motion profiles, system identification, single
// trials, and the three benchmark suites.
//
// Exit codes for the benchmark suites: 0 all directions hold, 2 a trial
// timed out, 3 a direction check failed.

#include <cstdio>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "holo/holo.hpp"

using namespace holo;

namespace {

RunMode parse_mode(const std::string& name) {
  if (name == "pitdt-system") return RunMode::PitdtSystem;
  if (name == "pid-system") return RunMode::PidSystem;
  if (name == "pitdt-only") return RunMode::PitdtOnly;
  if (name == "pid-only") return RunMode::PidOnly;
  throw CLI::ValidationError("--mode",
                             "expected pitdt-system|pid-system|pitdt-only|pid-only");
}

int run_profile_command(const RunConfig& config, const std::string& out_dir,
                        double distance, std::optional<double> vmax,
                        std::optional<double> amax, std::optional<double> jmax,
                        double period_ms) {
  const RobotConstraints& c = config.plant.constraints;
  const double v = vmax.value_or(c.v_max_y);
  const double a = amax.value_or(c.a_max_y);
  const double j = jmax.value_or(c.j_max_y);
  const auto profile = build_profile(distance, v, a, j);
  if (!profile) {
    std::fprintf(stderr,
                 "distance %.3f in is too short to reach %.1f in/s and stop;"
                 " profiling would be skipped\n",
                 distance, v);
    return 1;
  }
  std::string csv = "t,position,velocity,acceleration,jerk\n";
  char line[160];
  const double dt = period_ms / 1000.0;
  const long steps = static_cast<long>(profile->total_time() / dt);
  for (long i = 0; i <= steps + 1; ++i) {
    const double t = std::min(static_cast<double>(i) * dt, profile->total_time());
    const KinematicState s = profile->sample(t);
    std::snprintf(line, sizeof(line), "%.6f,%.9f,%.9f,%.9f,%.9f\n", t, s.position,
                  s.velocity, s.acceleration, profile->jerk_at(t));
    csv += line;
    if (t >= profile->total_time()) break;
  }
  const std::string file = out_dir + "/profile.csv";
  write_text_file(file, csv);
  std::printf("total time %.4f s over %.3f in -> %s\n", profile->total_time(),
              distance, file.c_str());
  return 0;
}

int run_sysid_command(const RunConfig& config) {
  const char* axis_names[] = {"x", "y", "heading"};
  const Axis axes[] = {Axis::X, Axis::Y, Axis::Heading};
  const RobotConstraints& c = config.plant.constraints;
  const double configured_kv[] = {c.kv_x, c.kv_y, c.kv_h};
  bool trouble = false;
  std::printf("%-8s %12s %12s %12s %s\n", "axis", "kv(meas)", "kv(config)",
              "vmax(meas)", "status");
  for (int i = 0; i < 3; ++i) {
    const SysidResult kv = sysid_kv(config.plant, axes[i]);
    const SysidResult vmax = sysid_vmax(config.plant, axes[i]);
    std::string status;
    if (kv.status == SysidStatus::QuasiStaticViolation) {
      status += "quasi-static-violation ";
      trouble = true;
    }
    if (vmax.status == SysidStatus::NoSteadyState) {
      status += "no-steady-state";
      trouble = true;
    }
    if (status.empty()) status = "ok";
    std::printf("%-8s %12.4f %12.4f %12.4f %s\n", axis_names[i], kv.value,
                configured_kv[i], vmax.value, status.c_str());
  }
  return trouble ? 1 : 0;
}

int run_single_trial(const RunConfig& config, const std::string& out_dir,
                     const std::string& path_file, const std::string& mode_name) {
  const Path path = load_path_file(path_file);
  const RunMode mode = parse_mode(mode_name);
  const TrialRecord rec = run_trial(config.make_plan(path, mode), config.plant,
                                    config.seeds.front());
  const std::string file = out_dir + "/trial_" + std::string(to_string(mode)) + ".csv";
  write_text_file(file, trial_to_csv(rec));
  const TrialMetrics m = compute_metrics(rec, path);
  std::printf("%s: %s in %.3f s, mean deviation %.3f in, max %.3f in, "
              "avg speed %.2f in/s -> %s\n",
              to_string(mode), rec.reached ? "reached" : "TIMED OUT", rec.t_final,
              m.mean_deviation, m.max_deviation, m.avg_speed, file.c_str());
  return rec.reached ? 0 : 2;
}

int run_setpoint_suite(const RunConfig& config, const std::string& out_dir) {
  const SetpointSuiteReport r = cmd_setpoint_suite(config, out_dir);
  std::printf("%-12s %12s %12s %14s\n", "distance", "pitdt (s)", "pid (s)",
              "improvement");
  for (const SetpointRow& row : r.rows)
    std::printf("%9.0f ft %12.3f %12.3f %13.1f%%\n", row.distance_ft,
                row.pitdt_time_s, row.pid_time_s, row.improvement_pct);
  if (r.any_timeout) return 2;
  for (const SetpointRow& row : r.rows)
    if (row.improvement_pct < 0.0) return 3;
  return 0;
}

int run_lookahead_sweep(const RunConfig& config, const std::string& out_dir) {
  const LookaheadSweepReport r = cmd_lookahead_sweep(config, out_dir);
  std::printf("%-10s %-14s %10s %12s %14s\n", "d (in)", "system", "time (s)",
              "slip total", "slip near end");
  for (const SweepRow& row : r.rows)
    std::printf("%-10g %-14s %10.3f %12lld %14lld\n", row.lookahead_in,
                to_string(row.mode), row.time_s, row.slip_total, row.slip_near_end);
  return r.any_timeout ? 2 : 0;
}

int run_compare(const RunConfig& config, const std::string& out_dir) {
  const CompareReport r = cmd_compare(config, out_dir);
  std::printf("%-16s %-14s %12s %12s %12s %10s\n", "scenario", "system",
              "mean dev", "max dev", "avg speed", "spread");
  for (const CompareCell& cell : r.cells)
    std::printf("%-16s %-14s %12.3f %12.3f %12.3f %10.3f\n", cell.scenario.c_str(),
                to_string(cell.mode), cell.mean_dev_avg, cell.max_dev,
                cell.avg_speed, cell.mean_dev_spread);
  for (const std::string& v : r.direction_violations)
    std::printf("direction violated: %s\n", v.c_str());
  if (r.any_timeout) return 2;
  return r.direction_violations.empty() ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Holonomic motion control library and benchmark harness"};
  app.require_subcommand(1);

  std::string config_file;
  std::string out_dir = "out";
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::optional<double> lookahead_in;
  app.add_option("--config", config_file, "run configuration file")
      ->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "output directory (default ./out)");
  app.add_option("--seed", seed, "base seed; trial k uses seed+k");
  app.add_option("--trials", trials, "trials per benchmark cell");
  app.add_option("--lookahead-in", lookahead_in, "pure pursuit look-ahead distance");

  auto* profile_cmd = app.add_subcommand("profile", "emit a sampled motion profile");
  double distance = 0.0, period_ms = 1.0;
  std::optional<double> vmax, amax, jmax;
  profile_cmd->add_option("--distance", distance, "distance to cover, inches")
      ->required();
  profile_cmd->add_option("--vmax", vmax, "cruise velocity limit");
  profile_cmd->add_option("--amax", amax, "acceleration limit");
  profile_cmd->add_option("--jmax", jmax, "jerk limit");
  profile_cmd->add_option("--period-ms", period_ms, "sample period (default 1 ms)");

  auto* sysid_cmd =
      app.add_subcommand("sysid", "measure plant constants on the simulator");

  auto* run_cmd = app.add_subcommand("run", "run one trial on a path file");
  std::string path_file, mode_name = "pitdt-system";
  run_cmd->add_option("--path", path_file, "path JSON file")->required();
  run_cmd->add_option("--mode", mode_name,
                      "pitdt-system|pid-system|pitdt-only|pid-only");

  auto* setpoint_cmd =
      app.add_subcommand("setpoint-suite", "both controllers at six distances");
  auto* sweep_cmd =
      app.add_subcommand("lookahead-sweep", "five look-ahead distances, 9 ft path");
  auto* compare_cmd =
      app.add_subcommand("compare", "3 scenarios x 2 systems x N trials");

  CLI11_PARSE(app, argc, argv);

  try {
    RunConfig config =
        config_file.empty() ? default_run_config() : load_config_file(config_file);
    if (trials) config.trials_per_cell = *trials;
    if (lookahead_in) config.lookahead_in = *lookahead_in;
    if (seed) {
      config.seeds.clear();
      for (int i = 0; i < std::max(config.trials_per_cell, 1); ++i)
        config.seeds.push_back(*seed + static_cast<std::uint64_t>(i));
    }
    while (config.seeds.size() < static_cast<std::size_t>(config.trials_per_cell))
      config.seeds.push_back(config.seeds.back() + 1);
    config.validate();

    if (profile_cmd->parsed())
      return run_profile_command(config, out_dir, distance, vmax, amax, jmax,
                                 period_ms);
    if (sysid_cmd->parsed()) return run_sysid_command(config);
    if (run_cmd->parsed())
      return run_single_trial(config, out_dir, path_file, mode_name);
    if (setpoint_cmd->parsed()) return run_setpoint_suite(config, out_dir);
    if (sweep_cmd->parsed()) return run_lookahead_sweep(config, out_dir);
    if (compare_cmd->parsed()) return run_compare(config, out_dir);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
