#pragma once

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "holo/config.hpp"
#include "holo/metrics.hpp"
#include "holo/orchestrator.hpp"
#include "holo/scenarios.hpp"

namespace holo {

inline void write_text_file(const std::string& filename, const std::string& text) {
  std::filesystem::create_directories(
      std::filesystem::path(filename).parent_path().empty()
          ? "."
          : std::filesystem::path(filename).parent_path().string());
  std::ofstream out(filename, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + filename);
  out << text;
}

namespace detail {
inline std::string fmt_cell(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}
}  // namespace detail

// ---------------------------------------------------------------------------
// Setpoint suite: both controllers alone, six start distances.

struct SetpointRow {
  double distance_ft = 0.0;
  double pitdt_time_s = 0.0;
  double pid_time_s = 0.0;
  bool pitdt_reached = false;
  bool pid_reached = false;
  double improvement_pct = 0.0;  // time saved by the time-varying controller
};

struct SetpointSuiteReport {
  std::vector<SetpointRow> rows;
  bool any_timeout = false;

  std::string to_csv() const {
    std::string out = "distance_ft,pitdt_time_s,pid_time_s,improvement_pct,"
                      "pitdt_reached,pid_reached\n";
    for (const auto& r : rows)
      out += detail::fmt_cell(r.distance_ft) + "," + detail::fmt_cell(r.pitdt_time_s) +
             "," + detail::fmt_cell(r.pid_time_s) + "," +
             detail::fmt_cell(r.improvement_pct) + "," +
             (r.pitdt_reached ? "1" : "0") + "," + (r.pid_reached ? "1" : "0") + "\n";
    return out;
  }
};

inline SetpointSuiteReport cmd_setpoint_suite(const RunConfig& config,
                                              const std::string& out_dir = "") {
  config.validate();
  static constexpr double kDistancesFt[] = {1, 2, 3, 4, 6, 9};
  SetpointSuiteReport report;
  for (double ft : kDistancesFt) {
    const Path path = straight_path(ft * 12.0);
    SetpointRow row;
    row.distance_ft = ft;
    for (RunMode mode : {RunMode::PitdtOnly, RunMode::PidOnly}) {
      const RunPlan plan = config.make_plan(path, mode);
      const TrialRecord rec = run_trial(plan, config.plant, config.seeds.front());
      const bool reached = rec.reached;
      const double time = rec.t_final;
      if (mode == RunMode::PitdtOnly) {
        row.pitdt_time_s = time;
        row.pitdt_reached = reached;
      } else {
        row.pid_time_s = time;
        row.pid_reached = reached;
      }
      if (!reached) report.any_timeout = true;
      if (!out_dir.empty()) {
        char name[96];
        std::snprintf(name, sizeof(name), "%s/setpoint_%gft_%s.csv", out_dir.c_str(),
                      ft, to_string(mode));
        write_text_file(name, trial_to_csv(rec));
      }
    }
    row.improvement_pct =
        row.pid_time_s > 0.0
            ? 100.0 * (row.pid_time_s - row.pitdt_time_s) / row.pid_time_s
            : 0.0;
    report.rows.push_back(row);
  }
  if (!out_dir.empty())
    write_text_file(out_dir + "/setpoint_suite.csv", report.to_csv());
  return report;
}

// ---------------------------------------------------------------------------
// Look-ahead sweep on the 9 ft straight.

struct SweepRow {
  double lookahead_in = 0.0;
  RunMode mode = RunMode::PitdtSystem;
  double time_s = 0.0;
  bool reached = false;
  long long slip_total = 0;
  long long slip_near_end = 0;
};

struct LookaheadSweepReport {
  std::vector<SweepRow> rows;
  bool any_timeout = false;

  const SweepRow* find(double d, RunMode mode) const {
    for (const auto& r : rows)
      if (r.lookahead_in == d && r.mode == mode) return &r;
    return nullptr;
  }

  std::string to_csv() const {
    std::string out = "lookahead_in,system,time_s,reached,slip_total,slip_near_end\n";
    for (const auto& r : rows)
      out += detail::fmt_cell(r.lookahead_in) + "," + to_string(r.mode) + "," +
             detail::fmt_cell(r.time_s) + "," + (r.reached ? "1" : "0") + "," +
             std::to_string(r.slip_total) + "," + std::to_string(r.slip_near_end) + "\n";
    return out;
  }
};

inline LookaheadSweepReport cmd_lookahead_sweep(const RunConfig& config,
                                                const std::string& out_dir = "") {
  config.validate();
  static constexpr double kLookaheads[] = {6, 8, 12, 16, 24};
  const Path path = nine_foot_path();
  LookaheadSweepReport report;
  for (double d : kLookaheads) {
    for (RunMode mode : {RunMode::PitdtSystem, RunMode::PidSystem}) {
      RunPlan plan = config.make_plan(path, mode);
      plan.lookahead_in = d;
      const TrialRecord rec = run_trial(plan, config.plant, config.seeds.front());
      SweepRow row;
      row.lookahead_in = d;
      row.mode = mode;
      row.time_s = rec.t_final;
      row.reached = rec.reached;
      row.slip_total = rec.slip_events;
      row.slip_near_end = near_end_slip_count(rec, path);
      report.rows.push_back(row);
      if (!rec.reached) report.any_timeout = true;
      if (!out_dir.empty()) {
        char name[96];
        std::snprintf(name, sizeof(name), "%s/lookahead_%gin_%s.csv", out_dir.c_str(),
                      d, to_string(mode));
        write_text_file(name, trial_to_csv(rec));
      }
    }
  }
  if (!out_dir.empty())
    write_text_file(out_dir + "/lookahead_sweep.csv", report.to_csv());
  return report;
}

// ---------------------------------------------------------------------------
// Scenario comparison: 3 scenarios x 2 systems x trials_per_cell.

struct CompareCell {
  std::string scenario;
  RunMode mode = RunMode::PitdtSystem;
  std::vector<TrialMetrics> trials;
  double mean_dev_avg = 0.0;
  double mean_dev_spread = 0.0;
  double max_dev = 0.0;
  double avg_speed = 0.0;  // mean of per-trial average speeds
  int timeouts = 0;
};

struct CompareReport {
  std::vector<CompareCell> cells;
  bool any_timeout = false;
  std::vector<std::string> direction_violations;

  const CompareCell* find(const std::string& scenario, RunMode mode) const {
    for (const auto& c : cells)
      if (c.scenario == scenario && c.mode == mode) return &c;
    return nullptr;
  }
};

namespace detail {

inline void check_compare_directions(CompareReport& report,
                                     const std::vector<Scenario>& scenarios) {
  for (const auto& sc : scenarios) {
    const CompareCell* pitdt = report.find(sc.name, RunMode::PitdtSystem);
    const CompareCell* pid = report.find(sc.name, RunMode::PidSystem);
    if (!pitdt || !pid) continue;
    if (!(pitdt->avg_speed > pid->avg_speed))
      report.direction_violations.push_back(sc.name + ": pitdt avg speed not higher");
    if (!(pitdt->mean_dev_avg >= pid->mean_dev_avg))
      report.direction_violations.push_back(sc.name + ": pitdt mean deviation lower");
    if (!(pitdt->mean_dev_avg <= 2.5))
      report.direction_violations.push_back(sc.name + ": pitdt mean deviation > 2.5 in");
    for (const CompareCell* cell : {pitdt, pid})
      if (!(cell->mean_dev_spread < 1.0))
        report.direction_violations.push_back(
            sc.name + "/" + to_string(cell->mode) + ": mean deviation spread >= 1 in");
  }
}

}  // namespace detail

inline CompareReport cmd_compare(const RunConfig& config,
                                 const std::string& out_dir = "",
                                 std::vector<Scenario> scenarios = {}) {
  config.validate();
  if (scenarios.empty()) scenarios = default_scenarios();
  CompareReport report;

  std::string mean_csv = "system,scenario";
  for (int i = 1; i <= config.trials_per_cell; ++i)
    mean_csv += ",trial_" + std::to_string(i);
  mean_csv += ",average\n";
  std::string max_csv = "system,scenario,max_deviation_in\n";
  std::string speed_csv = "system,scenario,avg_speed_in_per_s,timeouts\n";

  for (RunMode mode : {RunMode::PitdtSystem, RunMode::PidSystem}) {
    for (const Scenario& sc : scenarios) {
      CompareCell cell;
      cell.scenario = sc.name;
      cell.mode = mode;
      std::vector<TrialRecord> records;
      for (int trial = 0; trial < config.trials_per_cell; ++trial) {
        const RunPlan plan = config.make_plan(sc.path, mode);
        TrialRecord rec = run_trial(plan, config.plant, config.seeds[trial]);
        if (!rec.reached) {
          ++cell.timeouts;
          report.any_timeout = true;
        }
        if (!out_dir.empty()) {
          char name[128];
          std::snprintf(name, sizeof(name), "%s/compare_%s_%s_trial%02d.csv",
                        out_dir.c_str(), sc.name.c_str(), to_string(mode), trial + 1);
          write_text_file(name, trial_to_csv(rec));
        }
        cell.trials.push_back(compute_metrics(rec, sc.path));
        records.push_back(std::move(rec));
      }
      cell.max_dev = max_deviation(records, sc.path);
      double dev_sum = 0.0, speed_sum = 0.0;
      int speed_n = 0;
      for (const TrialMetrics& m : cell.trials) {
        dev_sum += m.mean_deviation;
        if (m.time_to_setpoint) {
          speed_sum += m.avg_speed;
          ++speed_n;
        }
      }
      cell.mean_dev_avg = dev_sum / static_cast<double>(cell.trials.size());
      cell.avg_speed = speed_n > 0 ? speed_sum / speed_n : 0.0;
      cell.mean_dev_spread = metric_spread(cell.trials, MetricField::MeanDeviation);

      mean_csv += std::string(to_string(mode)) + "," + sc.name;
      for (const TrialMetrics& m : cell.trials)
        mean_csv += "," + detail::fmt_cell(m.mean_deviation);
      mean_csv += "," + detail::fmt_cell(cell.mean_dev_avg) + "\n";
      max_csv += std::string(to_string(mode)) + "," + sc.name + "," +
                 detail::fmt_cell(cell.max_dev) + "\n";
      speed_csv += std::string(to_string(mode)) + "," + sc.name + "," +
                   detail::fmt_cell(cell.avg_speed) + "," +
                   std::to_string(cell.timeouts) + "\n";

      if (!out_dir.empty()) {
        for (auto [field, tag, width] :
             {std::tuple{MetricField::MeanDeviation, "meandev", 0.25},
              std::tuple{MetricField::TimeToSetpoint, "time", 0.25}}) {
          const Histogram h = spread_histogram(cell.trials, field, width);
          std::string csv = "bin_lo,bin_hi,count\n";
          for (std::size_t i = 0; i < h.counts.size(); ++i)
            csv += detail::fmt_cell(h.bin_lo(i)) + "," +
                   detail::fmt_cell(h.bin_lo(i) + h.bin_width) + "," +
                   std::to_string(h.counts[i]) + "\n";
          csv += "excluded,," + std::to_string(h.excluded) + "\n";
          char name[128];
          std::snprintf(name, sizeof(name), "%s/compare_hist_%s_%s_%s.csv",
                        out_dir.c_str(), tag, sc.name.c_str(), to_string(mode));
          write_text_file(name, csv);
        }
      }
      report.cells.push_back(std::move(cell));
    }
  }

  detail::check_compare_directions(report, scenarios);
  if (!out_dir.empty()) {
    write_text_file(out_dir + "/compare_mean_deviation.csv", mean_csv);
    write_text_file(out_dir + "/compare_max_deviation.csv", max_csv);
    write_text_file(out_dir + "/compare_avg_speed.csv", speed_csv);
  }
  return report;
}

}  // namespace holo
