#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "holo/pursuit.hpp"
#include "oracles.hpp"

using namespace holo;

namespace {
const Path straight = Path::from_waypoints({{0, 0, 0}, {108, 0, kPi / 2}});
}

TEST_CASE("lookahead point sits d ahead on the path") {
  PursuitState st{12.0, 0.0};
  const LookaheadResult r = find_lookahead(straight, {0, 0, 0}, st);
  CHECK(r.target.x == Catch::Approx(12.0));
  CHECK(r.target.y == Catch::Approx(0.0).margin(1e-12));
  CHECK(r.target.heading == Catch::Approx(kPi / 2 * 12.0 / 108.0));
  CHECK(r.state.last_progress == Catch::Approx(12.0));
}

TEST_CASE("near the end the target becomes the final pose") {
  PursuitState st{12.0, 0.0};
  // Prime progress mid-path, then query from near the end.
  st = find_lookahead(straight, {90, 0, 0}, st).state;
  const LookaheadResult r = find_lookahead(straight, {97, 0, 0}, st);
  CHECK(r.target.x == Catch::Approx(108.0));
  CHECK(r.target.heading == Catch::Approx(kPi / 2));
  CHECK(r.state.last_progress == Catch::Approx(108.0));
}

TEST_CASE("off-path robot re-acquires the closest point") {
  PursuitState st{12.0, 0.0};
  const LookaheadResult r = find_lookahead(straight, {54, 20, 0}, st);
  // 20 in lateral offset: the 12 in circle misses the path entirely.
  CHECK(r.target.x == Catch::Approx(54.0));
  CHECK(r.target.y == Catch::Approx(0.0).margin(1e-12));
  const double brute = oracles::brute_force_path_distance(straight, 54.0, 20.0, 0.01);
  CHECK(std::hypot(r.target.x - 54.0, r.target.y - 20.0) ==
        Catch::Approx(brute).margin(0.02));
}

TEST_CASE("re-acquisition never moves backwards") {
  PursuitState st{12.0, 60.0};
  const LookaheadResult r = find_lookahead(straight, {10, 25, 0}, st);
  CHECK(r.state.last_progress >= 60.0);
  CHECK(r.target.x >= 60.0 - 1e-9);
}

TEST_CASE("progress is monotone while tracking") {
  const Path wavy = Path::from_waypoints(
      {{0, 0, 0}, {30, 10, 0.3}, {60, -10, -0.3}, {90, 0, 0.2}, {120, 0, 0}});
  PursuitState st{10.0, 0.0};
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> lateral(-3.0, 3.0);
  double prev = 0.0;
  for (int i = 0; i <= 120; ++i) {
    const Pose2D robot{i * 1.0, lateral(rng), 0.0};
    const LookaheadResult r = find_lookahead(wavy, robot, st);
    st = r.state;
    CHECK(st.last_progress >= prev - 1e-12);
    prev = st.last_progress;
    // Target stays on the polyline (or is the endpoint).
    const auto [arc, dist] = closest_arc_length(wavy, r.target);
    CHECK(dist < 1e-9);
  }
  CHECK(prev == Catch::Approx(wavy.total_length()));
}

TEST_CASE("on-path robot far from the end sees exactly d") {
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> along(0.0, 80.0);
  PursuitState st{12.0, 0.0};
  std::vector<double> arcs;
  for (int i = 0; i < 50; ++i) arcs.push_back(along(rng));
  std::sort(arcs.begin(), arcs.end());
  for (const double s : arcs) {
    const Pose2D robot = point_at_arc_length(straight, s);
    const LookaheadResult r = find_lookahead(straight, robot, st);
    st = r.state;
    CHECK(std::hypot(r.target.x - robot.x, r.target.y - robot.y) ==
          Catch::Approx(12.0).margin(1e-9));
  }
}
