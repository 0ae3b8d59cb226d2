#pragma once

// Umbrella header: trajectory planning and per-slot radio resource
// management for a single aerial base station serving ground IoT devices,
// plus the simulation harness around them.

#include "uavpf/association.hpp"
#include "uavpf/channel.hpp"
#include "uavpf/episode.hpp"
#include "uavpf/errors.hpp"
#include "uavpf/grid.hpp"
#include "uavpf/persist.hpp"
#include "uavpf/planner_baselines.hpp"
#include "uavpf/planner_dfs.hpp"
#include "uavpf/planner_ga.hpp"
#include "uavpf/power.hpp"
#include "uavpf/ra_dual.hpp"
#include "uavpf/rng.hpp"
#include "uavpf/rrm.hpp"
#include "uavpf/scenario.hpp"
#include "uavpf/scenario_gen.hpp"
#include "uavpf/snapshot.hpp"
#include "uavpf/sweep.hpp"
#include "uavpf/trajectory.hpp"
#include "uavpf/user.hpp"
#include "uavpf/version.hpp"
#include "uavpf/waterfill.hpp"
