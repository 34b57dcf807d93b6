#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "holo/metrics.hpp"

using namespace holo;

namespace {

const Path straight = Path::from_waypoints({{0, 0, 0}, {100, 0, 0}});

TrialRecord record_from(const std::vector<Pose2D>& poses, double dt = 0.02,
                        bool reached = false, double t_final = 0.0) {
  TrialRecord r;
  for (std::size_t i = 0; i < poses.size(); ++i) {
    TrialSample s;
    s.t = static_cast<double>(i) * dt;
    s.pose = poses[i];
    r.samples.push_back(s);
  }
  r.reached = reached;
  r.t_final = t_final;
  return r;
}

}  // namespace

TEST_CASE("mean deviation of simple shapes") {
  SECTION("glued to the path") {
    std::vector<Pose2D> poses;
    for (int i = 0; i <= 50; ++i) poses.push_back({i * 2.0, 0.0, 0.0});
    CHECK(mean_deviation(record_from(poses), straight) ==
          Catch::Approx(0.0).margin(1e-12));
  }
  SECTION("constant lateral offset") {
    std::vector<Pose2D> poses;
    for (int i = 0; i <= 50; ++i) poses.push_back({i * 2.0, 2.0, 0.0});
    CHECK(mean_deviation(record_from(poses), straight) == Catch::Approx(2.0));
  }
  SECTION("linear drift averages to half the final value") {
    std::vector<Pose2D> poses;
    for (int i = 0; i <= 100; ++i) poses.push_back({i * 1.0, 3.0 * i / 100.0, 0.0});
    CHECK(mean_deviation(record_from(poses), straight) ==
          Catch::Approx(1.5).epsilon(1e-3));
  }
  SECTION("too little data") {
    CHECK_THROWS_AS(mean_deviation(record_from({{0, 0, 0}}), straight),
                    InsufficientData);
  }
}

TEST_CASE("interpolation grid refinement changes almost nothing") {
  std::vector<Pose2D> poses;
  for (int i = 0; i <= 60; ++i)
    poses.push_back({i * 1.5, std::sin(i * 0.3) * 2.0, 0.0});
  const TrialRecord r = record_from(poses);
  const double coarse = mean_deviation(r, straight, 1e-3);
  const double fine = mean_deviation(r, straight, 1e-4);
  CHECK(std::abs(coarse - fine) / fine < 1e-3);
}

TEST_CASE("max deviation catches the excursion") {
  std::vector<Pose2D> poses;
  for (int i = 0; i <= 50; ++i) poses.push_back({i * 2.0, 0.0, 0.0});
  poses[25].y = 4.0;  // injected excursion
  const TrialRecord r = record_from(poses);
  CHECK(max_deviation(std::span(&r, 1), straight) == Catch::Approx(4.0));
  CHECK_THROWS_AS(max_deviation(std::span<const TrialRecord>(), straight),
                  InsufficientData);
}

TEST_CASE("max dominates mean across noisy trials") {
  std::vector<TrialRecord> records;
  for (int k = 0; k < 5; ++k) {
    std::vector<Pose2D> poses;
    for (int i = 0; i <= 50; ++i)
      poses.push_back({i * 2.0, std::sin(i * 0.7 + k) * (k + 1) * 0.3, 0.0});
    records.push_back(record_from(poses));
  }
  const double worst = max_deviation(records, straight);
  for (const TrialRecord& r : records)
    CHECK(worst >= mean_deviation(r, straight));
}

TEST_CASE("average speed") {
  SECTION("stationary robot goes nowhere") {
    std::vector<Pose2D> poses(20, Pose2D{5, 0, 0});
    CHECK(average_speed(record_from(poses)) == 0.0);
  }
  SECTION("constant speed comes back exactly") {
    std::vector<Pose2D> poses;
    for (int i = 0; i <= 100; ++i) poses.push_back({i * 0.2, 0.0, 0.0});
    CHECK(average_speed(record_from(poses)) == Catch::Approx(10.0));
  }
  SECTION("post-setpoint stationary samples do not change it") {
    std::vector<Pose2D> poses;
    for (int i = 0; i <= 100; ++i) poses.push_back({i * 0.2, 0.0, 0.0});
    TrialRecord cut = record_from(poses, 0.02, true, 2.0);
    std::vector<Pose2D> padded = poses;
    for (int i = 0; i < 50; ++i) padded.push_back(poses.back());
    TrialRecord full = record_from(padded, 0.02, true, 2.0);
    CHECK(std::abs(average_speed(cut) - average_speed(full)) < 1e-9);
  }
  SECTION("zero duration is an error") {
    TrialRecord r = record_from({{0, 0, 0}, {1, 0, 0}}, 0.02, true, 0.0);
    CHECK_THROWS_AS(average_speed(r), InsufficientData);
  }
}

TEST_CASE("histograms count trials per bin") {
  std::vector<TrialMetrics> ms;
  for (int i = 0; i < 10; ++i) {
    TrialMetrics m;
    m.mean_deviation = 1.6;
    m.time_to_setpoint = 3.0;
    ms.push_back(m);
  }
  SECTION("identical trials occupy one bin") {
    const Histogram h = spread_histogram(ms, MetricField::MeanDeviation, 0.25);
    REQUIRE(h.counts.size() == 1);
    CHECK(h.counts[0] == 10);
    CHECK(h.excluded == 0);
    CHECK(h.bin_lo(0) == Catch::Approx(1.5));
  }
  SECTION("timeouts are counted, not dropped") {
    ms[3].time_to_setpoint.reset();
    const Histogram h = spread_histogram(ms, MetricField::TimeToSetpoint, 0.25);
    CHECK(h.excluded == 1);
    int total = 0;
    for (int c : h.counts) total += c;
    CHECK(total == 9);
  }
  SECTION("empty input is an error") {
    CHECK_THROWS_AS(spread_histogram({}, MetricField::MeanDeviation, 0.25),
                    InsufficientData);
  }
}

TEST_CASE("metric spread is max minus min") {
  std::vector<TrialMetrics> ms(3);
  ms[0].mean_deviation = 1.0;
  ms[1].mean_deviation = 1.4;
  ms[2].mean_deviation = 1.1;
  CHECK(metric_spread(ms, MetricField::MeanDeviation) == Catch::Approx(0.4));
}
