// Coarse grid search for default controller gains: minimize summed
// time-to-setpoint over the six setpoint distances, subject to at most one
// inch of overshoot and no timeouts. Used to produce the gains in the
// default config; rerun after changing plant constants.

#include <algorithm>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "holo/holo.hpp"

using namespace holo;

namespace {

constexpr double kDistancesIn[] = {12, 24, 36, 48, 72, 108};

struct Outcome {
  double total_time = 0.0;
  double worst_overshoot = 0.0;
  bool ok = true;
};

double overshoot_past_goal(const TrialRecord& rec, double goal_y) {
  double worst = 0.0;
  for (const TrialSample& s : rec.samples) worst = std::max(worst, s.pose.y - goal_y);
  return worst;
}

Outcome evaluate(const RunConfig& config, RunMode mode) {
  Outcome out;
  for (double d : kDistancesIn) {
    const RunPlan plan = config.make_plan(straight_path(d), mode);
    const TrialRecord rec = run_trial(plan, config.plant, config.seeds.front());
    if (!rec.reached) {
      out.ok = false;
      return out;
    }
    out.total_time += rec.t_final;
    out.worst_overshoot = std::max(out.worst_overshoot, overshoot_past_goal(rec, d));
  }
  if (out.worst_overshoot > 1.0) out.ok = false;
  return out;
}

void tune_pid(const RunConfig& base, int keep) {
  struct Row {
    PidGains g;
    Outcome o;
  };
  std::vector<Row> rows;
  for (double kp : {0.5, 1.0, 1.5, 2.0, 3.0, 4.0, 5.0, 6.0})
    for (double ki : {0.0, 0.05, 0.1, 0.2, 0.4, 0.8})
      for (double kd : {0.0, 0.02, 0.05, 0.1, 0.2, 0.4}) {
        RunConfig c = base;
        c.gains.pid_xy = PidGains{kp, ki, kd};
        const Outcome o = evaluate(c, RunMode::PidOnly);
        if (o.ok) rows.push_back({c.gains.pid_xy, o});
      }
  std::sort(rows.begin(), rows.end(),
            [](const Row& a, const Row& b) { return a.o.total_time < b.o.total_time; });
  std::printf("pid candidates (best %d of %zu feasible):\n", keep, rows.size());
  for (int i = 0; i < keep && i < static_cast<int>(rows.size()); ++i)
    std::printf("  kp=%-5g ki=%-5g kd=%-5g  total %.2f s, overshoot %.2f in\n",
                rows[i].g.kp, rows[i].g.ki, rows[i].g.kd, rows[i].o.total_time,
                rows[i].o.worst_overshoot);
}

void tune_pitdt(const RunConfig& base, int keep) {
  struct Row {
    ControllerGains g;
    Outcome o;
  };
  std::vector<Row> rows;
  for (double kp : {1.0, 2.0, 3.0, 4.0, 6.0})
    for (double ki : {0.0, 0.005, 0.01, 0.02, 0.04})
      for (double kd : {0.0, 0.5, 1.0, 2.0, 4.0})
        for (double u0 : {0.4, 0.6, 0.8})
          for (double a : {0.2, 0.5, 0.8}) {
            RunConfig c = base;
            c.gains.pitdt_xy = ControllerGains{kp, ki, kd, u0, a};
            const Outcome o = evaluate(c, RunMode::PitdtOnly);
            if (o.ok) rows.push_back({c.gains.pitdt_xy, o});
          }
  std::sort(rows.begin(), rows.end(),
            [](const Row& a, const Row& b) { return a.o.total_time < b.o.total_time; });
  std::printf("pitdt candidates (best %d of %zu feasible):\n", keep, rows.size());
  for (int i = 0; i < keep && i < static_cast<int>(rows.size()); ++i)
    std::printf(
        "  kp=%-5g ki=%-6g kd=%-5g u0=%-4g a=%-4g  total %.2f s, overshoot %.2f in\n",
        rows[i].g.kp, rows[i].g.ki, rows[i].g.kd, rows[i].g.u0, rows[i].g.a_rampup,
        rows[i].o.total_time, rows[i].o.worst_overshoot);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"grid-search default gains on the setpoint suite"};
  std::string config_file;
  std::string which = "both";
  int keep = 12;
  app.add_option("--config", config_file)->check(CLI::ExistingFile);
  app.add_option("--controller", which, "pid|pitdt|both");
  app.add_option("--keep", keep, "how many candidates to print");
  CLI11_PARSE(app, argc, argv);

  const RunConfig config =
      config_file.empty() ? default_run_config() : load_config_file(config_file);
  if (which == "pid" || which == "both") tune_pid(config, keep);
  if (which == "pitdt" || which == "both") tune_pitdt(config, keep);
  return 0;
}
