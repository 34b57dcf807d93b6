// Run both systems once over each benchmark scenario and print the metrics.

#include <cstdio>

#include "holo/config.hpp"
#include "holo/metrics.hpp"
#include "holo/scenarios.hpp"

using namespace holo;

int main() {
  const RunConfig config = default_run_config();
  std::printf("%-16s %-14s %9s %10s %10s\n", "scenario", "system", "time", "mean dev",
              "avg speed");
  for (const Scenario& sc : default_scenarios()) {
    for (RunMode mode : {RunMode::PitdtSystem, RunMode::PidSystem}) {
      const TrialRecord rec =
          run_trial(config.make_plan(sc.path, mode), config.plant, config.seeds[0]);
      const TrialMetrics m = compute_metrics(rec, sc.path);
      std::printf("%-16s %-14s %8.2fs %9.3f %9.2f\n", sc.name.c_str(),
                  to_string(mode), rec.t_final, m.mean_deviation, m.avg_speed);
    }
  }
  return 0;
}
