#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "holo/profile.hpp"
#include "oracles.hpp"

using namespace holo;

namespace {

RobotConstraints symmetric_constraints() {
  RobotConstraints c;
  c.kv_x = c.kv_y = 5.0;
  c.kv_h = 0.5;
  c.ka_x = c.ka_y = 7.0;
  c.ka_h = 0.6;
  c.v_max_x = c.v_max_y = 55.0;
  c.v_max_h = 5.9;
  c.a_max_x = c.a_max_y = 75.0;
  c.a_max_h = 5.5;
  c.j_max_x = c.j_max_y = 600.0;
  c.j_max_h = 45.0;
  c.v_battery = 12.0;
  return c;
}

}  // namespace

TEST_CASE("allocate_power splits the voltage budget") {
  const RobotConstraints c = symmetric_constraints();
  SECTION("hand-solved example") {
    // kv_lin = 5, kv_h = 0.5, 12 V, dx/dh = 20:
    // v_ang * (20/5 + 1/0.5) = 12  =>  v_ang = 2, v = 40.
    const AllocatedLimits a = allocate_power(c, 100.0, 5.0, 0.0);
    CHECK(a.travel_direction_kv == Catch::Approx(5.0));
    CHECK(a.v_h_eff == Catch::Approx(2.0));
    CHECK(a.v_linear_eff == Catch::Approx(40.0));
  }
  SECTION("no rotation leaves translation unallocated, exactly") {
    const AllocatedLimits a = allocate_power(c, 100.0, 0.0, 0.0);
    CHECK(a.v_linear_eff == 55.0);
    CHECK(a.v_h_eff == 5.9);
  }
  SECTION("no translation leaves rotation unallocated") {
    const AllocatedLimits a = allocate_power(c, 0.0, kPi, 0.3);
    CHECK(a.v_h_eff == 5.9);
  }
  SECTION("degenerate path") {
    CHECK_THROWS_AS(allocate_power(c, 0.0, 0.0, 0.0), DegeneratePath);
  }
  SECTION("clamped by v_max when the budget allows more") {
    RobotConstraints tight = c;
    tight.v_max_x = tight.v_max_y = 30.0;
    const AllocatedLimits a = allocate_power(tight, 100.0, 5.0, 0.0);
    CHECK(a.v_linear_eff == 30.0);  // 40 would exceed the ceiling
  }
}

TEST_CASE("elliptical interpolation hits the axes exactly") {
  CHECK(elliptical_limit(4.0, 6.0, 0.0) == Catch::Approx(4.0));
  CHECK(elliptical_limit(4.0, 6.0, kPi / 2) == Catch::Approx(6.0));
  CHECK(elliptical_limit(4.0, 4.0, 1.234) == Catch::Approx(4.0));
}

TEST_CASE("build_profile picks the documented segment timing") {
  SECTION("long cruise") {
    const auto p = build_profile(1e9, 10.0, 5.0, 25.0);
    REQUIRE(p.has_value());
    const auto& segs = p->segments();
    CHECK(segs[0].duration == Catch::Approx(0.2));  // a/j
    CHECK(segs[1].duration == Catch::Approx(1.8));  // v/a - a/j
    CHECK(segs[2].duration == Catch::Approx(0.2));
    CHECK(segs[3].duration == Catch::Approx((1e9 - 22.0) / 10.0));
    CHECK(segs[0].jerk == 25.0);
    CHECK(segs[2].jerk == -25.0);
    CHECK(segs[4].jerk == -25.0);
    CHECK(segs[6].jerk == 25.0);
    // Peak velocity is exactly v_max through the cruise.
    CHECK(p->sample(2.2 + 1.0).velocity == Catch::Approx(10.0));
  }
  SECTION("too short") {
    CHECK_FALSE(build_profile(0.001, 10.0, 5.0, 25.0).has_value());
  }
  SECTION("triangular acceleration") {
    // a^2/j = 100 > v = 1: segments 2 and 6 vanish, peak accel sqrt(v*j) = 1.
    const auto p = build_profile(10.0, 1.0, 10.0, 1.0);
    REQUIRE(p.has_value());
    CHECK(p->segments()[1].duration == 0.0);
    CHECK(p->segments()[5].duration == 0.0);
    const double t1 = p->segments()[0].duration;
    CHECK(t1 == Catch::Approx(1.0));  // sqrt(v/j)
    CHECK(p->sample(t1).acceleration == Catch::Approx(1.0));
  }
  SECTION("invalid parameters") {
    CHECK_THROWS_AS(build_profile(-1.0, 1.0, 1.0, 1.0), InvalidConstraint);
    CHECK_THROWS_AS(build_profile(1.0, 0.0, 1.0, 1.0), InvalidConstraint);
  }
}

TEST_CASE("sample endpoints are at rest") {
  const auto p = build_profile(200.0, 40.0, 75.0, 600.0);
  REQUIRE(p.has_value());
  const KinematicState s0 = p->sample(0.0);
  CHECK(s0.position == 0.0);
  CHECK(s0.velocity == 0.0);
  CHECK(s0.acceleration == 0.0);
  const KinematicState s1 = p->sample(p->total_time());
  CHECK(s1.position == Catch::Approx(200.0).epsilon(1e-9));
  CHECK(s1.velocity == Catch::Approx(0.0).margin(1e-9));
  CHECK(s1.acceleration == Catch::Approx(0.0).margin(1e-9));
  // Clamping contract.
  CHECK(p->sample(-5.0).position == 0.0);
  CHECK(p->sample(p->total_time() + 5.0).position == Catch::Approx(200.0));
}

TEST_CASE("sampling matches stepwise integration of the jerk schedule") {
  const auto p = build_profile(120.0, 30.0, 60.0, 500.0);
  REQUIRE(p.has_value());
  // Midpoint of segment 1, spot value against the oracle.
  const double t_mid = p->segments()[0].duration / 2.0;
  const KinematicState ref = oracles::integrate_jerk_schedule(p->segments(), t_mid);
  const KinematicState got = p->sample(t_mid);
  CHECK(got.position == Catch::Approx(ref.position).margin(1e-9));
  CHECK(got.velocity == Catch::Approx(ref.velocity).margin(1e-9));
  CHECK(got.acceleration == Catch::Approx(ref.acceleration).margin(1e-9));
}

TEST_CASE("random profiles agree with the integration oracle") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> dist_d(0.5, 400.0);
  std::uniform_real_distribution<double> dist_v(0.5, 60.0);
  std::uniform_real_distribution<double> dist_a(1.0, 120.0);
  std::uniform_real_distribution<double> dist_j(5.0, 900.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int built = 0;
  while (built < 150) {
    const double d = dist_d(rng), v = dist_v(rng), a = dist_a(rng), j = dist_j(rng);
    const auto p = build_profile(d, v, a, j);
    if (!p) continue;
    ++built;
    for (int k = 0; k < 25; ++k) {
      const double t = unit(rng) * p->total_time();
      const KinematicState ref = oracles::integrate_jerk_schedule(p->segments(), t);
      const KinematicState got = p->sample(t);
      const double scale = std::max({1.0, std::abs(ref.position)});
      CHECK(std::abs(got.position - ref.position) / scale < 1e-6);
      CHECK(std::abs(got.velocity - ref.velocity) < 1e-6 * std::max(1.0, v));
      CHECK(std::abs(got.acceleration - ref.acceleration) < 1e-6 * std::max(1.0, a));
    }
  }
}

TEST_CASE("profile bounds, jerk values, and monotone position") {
  const auto p = build_profile(250.0, 35.0, 70.0, 550.0);
  REQUIRE(p.has_value());
  double prev_pos = -1.0;
  for (int i = 0; i <= 10000; ++i) {
    const double t = p->total_time() * i / 10000.0;
    const KinematicState s = p->sample(t);
    CHECK(std::abs(s.velocity) <= 35.0 * (1.0 + 1e-9));
    CHECK(std::abs(s.acceleration) <= 70.0 * (1.0 + 1e-9));
    CHECK(s.position >= prev_pos - 1e-12);
    prev_pos = s.position;
  }
  for (const auto& seg : p->segments())
    CHECK((seg.jerk == 550.0 || seg.jerk == -550.0 || seg.jerk == 0.0));
}

TEST_CASE("too-short boundary is a clean threshold") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> dist_v(0.5, 50.0);
  std::uniform_real_distribution<double> dist_a(1.0, 100.0);
  std::uniform_real_distribution<double> dist_j(5.0, 800.0);
  for (int trial = 0; trial < 25; ++trial) {
    const double v = dist_v(rng), a = dist_a(rng), j = dist_j(rng);
    double lo = 1e-9, hi = 1e6;
    REQUIRE_FALSE(build_profile(lo, v, a, j).has_value());
    REQUIRE(build_profile(hi, v, a, j).has_value());
    for (int i = 0; i < 80; ++i) {
      const double mid = 0.5 * (lo + hi);
      if (build_profile(mid, v, a, j).has_value())
        hi = mid;
      else
        lo = mid;
    }
    // Everything below the threshold is TooShort, everything at or above works.
    CHECK_FALSE(build_profile(hi * (1.0 - 1e-9), v, a, j).has_value());
    CHECK(build_profile(hi * (1.0 + 1e-9), v, a, j).has_value());
  }
}

TEST_CASE("zero profile samples to rest") {
  const MotionProfile z = MotionProfile::zero();
  CHECK(z.is_zero());
  const KinematicState s = z.sample(3.0);
  CHECK(s.position == 0.0);
  CHECK(s.velocity == 0.0);
  CHECK(s.acceleration == 0.0);
}

TEST_CASE("holonomic profiles synchronize translation and rotation") {
  const RobotConstraints c = symmetric_constraints();
  SECTION("pure translation leaves the angular profile zero") {
    const Path p = Path::from_waypoints({{0, 0, 0}, {108, 0, 0}});
    const auto h = build_holonomic_profiles(p, c);
    REQUIRE(h.has_value());
    CHECK(h->angular.is_zero());
    CHECK_FALSE(h->translational.is_zero());
    CHECK(h->rotation_sign == 0.0);
    CHECK(h->total_time == Catch::Approx(h->translational.total_time()));
  }
  SECTION("pure rotation leaves the translational profile zero") {
    RobotConstraints slow_spin = c;
    slow_spin.v_max_h = 1.5;  // reachable within a 3 rad turn
    const Path p = Path::from_waypoints({{0, 0, 0}, {0, 0, 3.0}});
    const auto h = build_holonomic_profiles(p, slow_spin);
    REQUIRE(h.has_value());
    CHECK(h->translational.is_zero());
    CHECK_FALSE(h->angular.is_zero());
    CHECK(h->rotation_sign == 1.0);
  }
  SECTION("both active ends together") {
    const Path p = Path::from_waypoints({{0, 0, 0}, {108, 0, kPi}});
    const auto h = build_holonomic_profiles(p, c);
    REQUIRE(h.has_value());
    CHECK(std::abs(h->translational.total_time() - h->angular.total_time()) <= 1e-6);
    CHECK(h->translational.total_distance() == Catch::Approx(108.0));
    CHECK(h->angular.total_distance() == Catch::Approx(kPi));
  }
  SECTION("negative net rotation carries its sign") {
    const Path p = Path::from_waypoints({{0, 0, 0}, {108, 0, -kPi / 2}});
    const auto h = build_holonomic_profiles(p, c);
    REQUIRE(h.has_value());
    CHECK(h->rotation_sign == -1.0);
  }
  SECTION("too-short path propagates") {
    const Path p = Path::from_waypoints({{0, 0, 0}, {0.5, 0, 0}});
    CHECK_FALSE(build_holonomic_profiles(p, c).has_value());
  }
}
