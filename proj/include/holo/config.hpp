#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "holo/orchestrator.hpp"
#include "holo/simulator.hpp"

namespace holo {

/// Everything a benchmark run needs, loadable from one sectioned key=value
/// file. The shipped default file is the source of record for every constant
/// the benchmarks use.
struct RunConfig {
  PlantConfig plant;
  GainSet gains;
  double lookahead_in = 12.0;
  double heading_radius_in = 8.85;
  double timeout_s = 30.0;
  SetpointParams setpoint;
  bool renormalize_each_update = false;
  int trials_per_cell = 10;
  std::vector<std::uint64_t> seeds;

  void validate() const {
    plant.validate();
    gains.pitdt_xy.validate();
    gains.pitdt_heading.validate();
    if (trials_per_cell < 1) throw InvalidConstraint("trials_per_cell must be >= 1");
    if (seeds.size() < static_cast<std::size_t>(trials_per_cell))
      throw InvalidConstraint("need at least one seed per trial");
    if (!(lookahead_in > 0.0) || !(heading_radius_in > 0.0) || !(timeout_s > 0.0))
      throw InvalidConstraint("run parameters must be positive");
  }

  RunPlan make_plan(Path path, RunMode mode) const {
    RunPlan plan(std::move(path));
    plan.mode = mode;
    plan.gains = gains;
    plan.lookahead_in = lookahead_in;
    plan.timeout_s = timeout_s;
    plan.heading_radius_in = heading_radius_in;
    plan.renormalize_each_update = renormalize_each_update;
    plan.setpoint = setpoint;
    return plan;
  }
};

inline RunConfig default_run_config() {
  RunConfig c;
  c.seeds = {101, 102, 103, 104, 105, 106, 107, 108, 109, 110};
  c.gains.pitdt_xy = ControllerGains{2.2, 0.02, 1.2, 0.55, 0.5};
  c.gains.pitdt_heading = ControllerGains{1.8, 0.01, 0.4, 0.6, 0.4};
  c.gains.pid_xy = PidGains{1.6, 0.25, 0.08};
  c.gains.pid_heading = PidGains{1.5, 0.1, 0.05};
  return c;
}

namespace detail {

struct ConfigReader {
  std::map<std::string, std::map<std::string, std::string>> sections;
  std::set<std::string> consumed;

  static ConfigReader parse(const std::string& text) {
    ConfigReader r;
    std::istringstream in(text);
    std::string line, section;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line = line.substr(0, hash);
      auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
      };
      line = trim(line);
      if (line.empty()) continue;
      if (line.front() == '[') {
        if (line.back() != ']')
          throw std::runtime_error("config line " + std::to_string(line_no) +
                                   ": malformed section header");
        section = line.substr(1, line.size() - 2);
        continue;
      }
      const auto eq = line.find('=');
      if (eq == std::string::npos)
        throw std::runtime_error("config line " + std::to_string(line_no) +
                                 ": expected key = value");
      r.sections[section][trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return r;
  }

  double number(const std::string& sec, const std::string& key, double fallback) {
    consumed.insert(sec + "/" + key);
    auto s = sections.find(sec);
    if (s == sections.end()) return fallback;
    auto k = s->second.find(key);
    if (k == s->second.end()) return fallback;
    std::size_t pos = 0;
    const double v = std::stod(k->second, &pos);
    if (pos != k->second.size())
      throw std::runtime_error("config value " + sec + "." + key + ": not a number");
    return v;
  }

  bool boolean(const std::string& sec, const std::string& key, bool fallback) {
    consumed.insert(sec + "/" + key);
    auto s = sections.find(sec);
    if (s == sections.end()) return fallback;
    auto k = s->second.find(key);
    if (k == s->second.end()) return fallback;
    if (k->second == "true" || k->second == "1") return true;
    if (k->second == "false" || k->second == "0") return false;
    throw std::runtime_error("config value " + sec + "." + key + ": not a boolean");
  }

  std::vector<std::uint64_t> seed_list(const std::string& sec, const std::string& key,
                                       std::vector<std::uint64_t> fallback) {
    consumed.insert(sec + "/" + key);
    auto s = sections.find(sec);
    if (s == sections.end()) return fallback;
    auto k = s->second.find(key);
    if (k == s->second.end()) return fallback;
    std::vector<std::uint64_t> out;
    std::istringstream in(k->second);
    std::string item;
    while (std::getline(in, item, ','))
      out.push_back(std::stoull(item));
    return out;
  }

  void reject_unknown() const {
    for (const auto& [sec, keys] : sections)
      for (const auto& [key, value] : keys)
        if (!consumed.count(sec + "/" + key))
          throw std::runtime_error("config: unknown key " + sec + "." + key);
  }
};

inline std::string fmt_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

}  // namespace detail

inline RunConfig parse_config(const std::string& text) {
  detail::ConfigReader r = detail::ConfigReader::parse(text);
  RunConfig c = default_run_config();
  RobotConstraints& k = c.plant.constraints;

  k.kv_x = r.number("constraints", "kv_x", k.kv_x);
  k.kv_y = r.number("constraints", "kv_y", k.kv_y);
  k.kv_h = r.number("constraints", "kv_h", k.kv_h);
  k.ka_x = r.number("constraints", "ka_x", k.ka_x);
  k.ka_y = r.number("constraints", "ka_y", k.ka_y);
  k.ka_h = r.number("constraints", "ka_h", k.ka_h);
  k.v_max_x = r.number("constraints", "v_max_x", k.v_max_x);
  k.v_max_y = r.number("constraints", "v_max_y", k.v_max_y);
  k.v_max_h = r.number("constraints", "v_max_h", k.v_max_h);
  k.a_max_x = r.number("constraints", "a_max_x", k.a_max_x);
  k.a_max_y = r.number("constraints", "a_max_y", k.a_max_y);
  k.a_max_h = r.number("constraints", "a_max_h", k.a_max_h);
  k.j_max_x = r.number("constraints", "j_max_x", k.j_max_x);
  k.j_max_y = r.number("constraints", "j_max_y", k.j_max_y);
  k.j_max_h = r.number("constraints", "j_max_h", k.j_max_h);
  k.v_battery = r.number("constraints", "v_battery", k.v_battery);

  MecanumGeometry& m = c.plant.mecanum;
  m.half_length = r.number("mecanum", "half_length", m.half_length);
  m.half_width = r.number("mecanum", "half_width", m.half_width);
  m.wheel_radius = r.number("mecanum", "wheel_radius", m.wheel_radius);
  m.kv_wheel = r.number("mecanum", "kv_wheel", m.kv_wheel);

  OdometryGeometry& o = c.plant.odometry;
  o.track_half_width = r.number("odometry", "track_half_width", o.track_half_width);
  o.back_offset = r.number("odometry", "back_offset", o.back_offset);
  o.counts_per_inch = r.number("odometry", "counts_per_inch", o.counts_per_inch);

  c.plant.slip_accel_limit = r.number("plant", "slip_accel_limit", c.plant.slip_accel_limit);
  c.plant.slip_alpha_limit = r.number("plant", "slip_alpha_limit", c.plant.slip_alpha_limit);
  c.plant.friction_volts = r.number("plant", "friction_volts", c.plant.friction_volts);
  c.plant.noise_seed = static_cast<std::uint64_t>(
      r.number("plant", "noise_seed", static_cast<double>(c.plant.noise_seed)));
  c.plant.velocity_noise_sd =
      r.number("plant", "velocity_noise_sd", c.plant.velocity_noise_sd);
  c.plant.encoder_noise_sd =
      r.number("plant", "encoder_noise_sd", c.plant.encoder_noise_sd);
  c.plant.loop_dt = r.number("plant", "loop_dt", c.plant.loop_dt);

  auto read_pitdt = [&r](const std::string& sec, ControllerGains& g) {
    g.kp = r.number(sec, "kp", g.kp);
    g.ki = r.number(sec, "ki", g.ki);
    g.kd = r.number(sec, "kd", g.kd);
    g.u0 = r.number(sec, "u0", g.u0);
    g.a_rampup = r.number(sec, "a_rampup", g.a_rampup);
  };
  auto read_pid = [&r](const std::string& sec, PidGains& g) {
    g.kp = r.number(sec, "kp", g.kp);
    g.ki = r.number(sec, "ki", g.ki);
    g.kd = r.number(sec, "kd", g.kd);
  };
  read_pitdt("gains.pitdt.translation", c.gains.pitdt_xy);
  read_pitdt("gains.pitdt.heading", c.gains.pitdt_heading);
  read_pid("gains.pid.translation", c.gains.pid_xy);
  read_pid("gains.pid.heading", c.gains.pid_heading);

  c.lookahead_in = r.number("pursuit", "lookahead_in", c.lookahead_in);
  c.heading_radius_in = r.number("run", "heading_radius_in", c.heading_radius_in);
  c.timeout_s = r.number("run", "timeout_s", c.timeout_s);
  c.setpoint.threshold_in = r.number("run", "setpoint_threshold_in", c.setpoint.threshold_in);
  c.setpoint.v_negligible = r.number("run", "setpoint_v_negligible", c.setpoint.v_negligible);
  c.setpoint.dwell_s = r.number("run", "setpoint_dwell_s", c.setpoint.dwell_s);
  c.renormalize_each_update =
      r.boolean("run", "renormalize_each_update", c.renormalize_each_update);
  c.trials_per_cell =
      static_cast<int>(r.number("run", "trials_per_cell", c.trials_per_cell));
  c.seeds = r.seed_list("run", "seeds", c.seeds);

  r.reject_unknown();
  c.validate();
  return c;
}

inline RunConfig load_config_file(const std::string& filename) {
  std::ifstream in(filename);
  if (!in) throw std::runtime_error("cannot open config file: " + filename);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return parse_config(text);
}

/// Serialize a config in the annotated format the default file ships in.
inline std::string config_to_string(const RunConfig& c) {
  using detail::fmt_num;
  const RobotConstraints& k = c.plant.constraints;
  std::string out;
  auto add = [&out](const std::string& s) { out += s; out += '\n'; };
  add("# Benchmark run configuration. Units: inches, seconds, radians, volts.");
  add("");
  add("[constraints]");
  add("# velocity-per-volt and acceleration-per-volt slopes per chassis axis");
  add("kv_x = " + fmt_num(k.kv_x));
  add("kv_y = " + fmt_num(k.kv_y));
  add("kv_h = " + fmt_num(k.kv_h));
  add("ka_x = " + fmt_num(k.ka_x));
  add("ka_y = " + fmt_num(k.ka_y));
  add("ka_h = " + fmt_num(k.ka_h));
  add("# per-axis velocity/acceleration/jerk ceilings used by profiling");
  add("v_max_x = " + fmt_num(k.v_max_x));
  add("v_max_y = " + fmt_num(k.v_max_y));
  add("v_max_h = " + fmt_num(k.v_max_h));
  add("a_max_x = " + fmt_num(k.a_max_x));
  add("a_max_y = " + fmt_num(k.a_max_y));
  add("a_max_h = " + fmt_num(k.a_max_h));
  add("j_max_x = " + fmt_num(k.j_max_x));
  add("j_max_y = " + fmt_num(k.j_max_y));
  add("j_max_h = " + fmt_num(k.j_max_h));
  add("v_battery = " + fmt_num(k.v_battery));
  add("");
  add("[mecanum]");
  add("half_length = " + fmt_num(c.plant.mecanum.half_length));
  add("half_width = " + fmt_num(c.plant.mecanum.half_width));
  add("wheel_radius = " + fmt_num(c.plant.mecanum.wheel_radius));
  add("kv_wheel = " + fmt_num(c.plant.mecanum.kv_wheel));
  add("");
  add("[odometry]");
  add("track_half_width = " + fmt_num(c.plant.odometry.track_half_width));
  add("back_offset = " + fmt_num(c.plant.odometry.back_offset));
  add("counts_per_inch = " + fmt_num(c.plant.odometry.counts_per_inch));
  add("");
  add("[plant]");
  add("# traction bounds; realized acceleration clamps here (slip)");
  add("slip_accel_limit = " + fmt_num(c.plant.slip_accel_limit));
  add("slip_alpha_limit = " + fmt_num(c.plant.slip_alpha_limit));
  add("# Coulomb deadband per axis; 0 recovers the pure affine model");
  add("friction_volts = " + fmt_num(c.plant.friction_volts));
  add("noise_seed = " + fmt_num(static_cast<double>(c.plant.noise_seed)));
  add("velocity_noise_sd = " + fmt_num(c.plant.velocity_noise_sd));
  add("encoder_noise_sd = " + fmt_num(c.plant.encoder_noise_sd));
  add("loop_dt = " + fmt_num(c.plant.loop_dt));
  add("");
  auto add_pitdt = [&](const std::string& sec, const ControllerGains& g) {
    add("[" + sec + "]");
    add("kp = " + fmt_num(g.kp));
    add("ki = " + fmt_num(g.ki));
    add("kd = " + fmt_num(g.kd));
    add("u0 = " + fmt_num(g.u0));
    add("a_rampup = " + fmt_num(g.a_rampup));
    add("");
  };
  auto add_pid = [&](const std::string& sec, const PidGains& g) {
    add("[" + sec + "]");
    add("kp = " + fmt_num(g.kp));
    add("ki = " + fmt_num(g.ki));
    add("kd = " + fmt_num(g.kd));
    add("");
  };
  add_pitdt("gains.pitdt.translation", c.gains.pitdt_xy);
  add_pitdt("gains.pitdt.heading", c.gains.pitdt_heading);
  add_pid("gains.pid.translation", c.gains.pid_xy);
  add_pid("gains.pid.heading", c.gains.pid_heading);
  add("[pursuit]");
  add("lookahead_in = " + fmt_num(c.lookahead_in));
  add("");
  add("[run]");
  add("heading_radius_in = " + fmt_num(c.heading_radius_in));
  add("timeout_s = " + fmt_num(c.timeout_s));
  add("setpoint_threshold_in = " + fmt_num(c.setpoint.threshold_in));
  add("setpoint_v_negligible = " + fmt_num(c.setpoint.v_negligible));
  add("setpoint_dwell_s = " + fmt_num(c.setpoint.dwell_s));
  add("renormalize_each_update = " +
      std::string(c.renormalize_each_update ? "true" : "false"));
  add("trials_per_cell = " + fmt_num(c.trials_per_cell));
  std::string seeds = "seeds = ";
  for (std::size_t i = 0; i < c.seeds.size(); ++i) {
    if (i) seeds += ",";
    seeds += std::to_string(c.seeds[i]);
  }
  add(seeds);
  return out;
}

}  // namespace holo
