// Build the two synchronized profiles for a path and print a coarse table.

#include <cstdio>

#include "holo/profile.hpp"
#include "holo/scenarios.hpp"

using namespace holo;

int main() {
  const Path path = default_scenarios()[0].path;  // 9 ft with a quarter turn
  RobotConstraints constraints;
  const auto profiles = build_holonomic_profiles(path, constraints);
  if (!profiles) {
    std::printf("path too short to profile\n");
    return 1;
  }
  std::printf("synchronized duration: %.4f s (rotation sign %+.0f)\n",
              profiles->total_time, profiles->rotation_sign);
  std::printf("%8s %12s %12s %12s %12s\n", "t", "arc pos", "arc vel", "angle",
              "ang vel");
  const int rows = 12;
  for (int i = 0; i <= rows; ++i) {
    const double t = profiles->total_time * i / rows;
    const KinematicState lin = profiles->translational.sample(t);
    const KinematicState ang = profiles->angular.sample(t);
    std::printf("%8.3f %12.3f %12.3f %12.4f %12.4f\n", t, lin.position, lin.velocity,
                profiles->rotation_sign * ang.position,
                profiles->rotation_sign * ang.velocity);
  }
  return 0;
}
