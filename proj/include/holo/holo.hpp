#pragma once

// Motion control for holonomic (mecanum) mobile robots: seven-segment
// motion profiling with translation/rotation power allocation, a
// time-varying PID controller plus pure pursuit tracking, and a
// deterministic simulator and benchmark harness to evaluate them.

#include "holo/config.hpp"
#include "holo/controller.hpp"
#include "holo/errors.hpp"
#include "holo/geometry.hpp"
#include "holo/harness.hpp"
#include "holo/mecanum.hpp"
#include "holo/metrics.hpp"
#include "holo/orchestrator.hpp"
#include "holo/path_io.hpp"
#include "holo/profile.hpp"
#include "holo/pursuit.hpp"
#include "holo/scenarios.hpp"
#include "holo/simulator.hpp"
