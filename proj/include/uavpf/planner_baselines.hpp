#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "uavpf/planner_dfs.hpp"
#include "uavpf/planner_ga.hpp"
#include "uavpf/rng.hpp"
#include "uavpf/trajectory.hpp"

namespace uavpf {

namespace detail {

inline constexpr double orbit_center_x_m = 300.0;
inline constexpr double orbit_center_y_m = 300.0;
inline constexpr double orbit_radius_m = 100.0;
inline constexpr double orbit_altitude_m = 200.0;
inline constexpr double fixed_position_m[3] = {300.0, 300.0, 200.0};

inline GridPoint snap_checked(const Scenario& sc, const Position& p, const char* what) {
    if (p.x_m < 0.0 || p.x_m > sc.map.width_m || p.y_m < 0.0 || p.y_m > sc.map.width_m ||
        p.z_m < sc.map.min_alt_m || p.z_m > sc.map.max_alt_m)
        throw UsageError(std::string(what) + ": anchor position is outside the flight map");
    return sc.map.snap(p);
}

} // namespace detail

/**
 * Stationary baseline: the vehicle sits at (300, 300, 200) m, snapped to the
 * grid, for the whole episode; radio resources are still re-optimized every
 * slot. Errors out when that anchor lies outside the map.
 */
inline Trajectory fixed_plan(const Scenario& sc) {
    const GridPoint q = detail::snap_checked(
        sc,
        Position{detail::fixed_position_m[0], detail::fixed_position_m[1],
                 detail::fixed_position_m[2]},
        "fixed_plan");
    const SlotEvaluator eval(sc);
    Trajectory traj =
        replay_with_rrm(eval, std::vector<GridPoint>(static_cast<std::size_t>(sc.num_slots), q));
    traj.start = q;
    return traj;
}

/**
 * Orbiting baseline: the vehicle circles the orbit of radius 100 m around
 * (300, 300) at 200 m altitude with angular velocity v * dt / radius,
 * starting from phase theta0; radio resources are re-optimized per slot.
 *
 * Each slot position is the grid point nearest to the exact orbit point
 * among the points reachable from the previous one. Unconstrained
 * nearest-point snapping can jump two cells when the orbit crosses a cell
 * boundary (an 80 m hop against the 45 m slot radius), which would break
 * the flight constraint the planners are audited against.
 */
inline Trajectory circular_plan(const Scenario& sc, double theta0) {
    const double angular_step =
        sc.dynamics.max_speed_mps * sc.dynamics.slot_duration_s / detail::orbit_radius_m;
    auto orbit_point = [&](int t) {
        const double theta = theta0 + angular_step * t;
        return Position{detail::orbit_radius_m * std::cos(theta) + detail::orbit_center_x_m,
                        detail::orbit_radius_m * std::sin(theta) + detail::orbit_center_y_m,
                        detail::orbit_altitude_m};
    };
    const GridPoint start = detail::snap_checked(sc, orbit_point(0), "circular_plan");
    std::vector<GridPoint> positions;
    positions.reserve(static_cast<std::size_t>(sc.num_slots));
    GridPoint prev = start;
    for (int t = 1; t <= sc.num_slots; ++t) {
        const Position target = orbit_point(t);
        detail::snap_checked(sc, target, "circular_plan"); // map-bounds check
        const std::vector<GridPoint> moves = reachable_set(sc.map, sc.dynamics, prev);
        GridPoint best = moves.front();
        double best_d = distance(sc.map.position_of(best), target);
        for (const GridPoint& m : moves) {
            const double d = distance(sc.map.position_of(m), target);
            if (d < best_d - 1e-12) {
                best = m;
                best_d = d;
            }
        }
        positions.push_back(best);
        prev = best;
    }
    const SlotEvaluator eval(sc);
    Trajectory traj = replay_with_rrm(eval, positions);
    traj.start = start;
    return traj;
}

// Planner dispatch. The orbit baseline draws its starting phase from the
// planner's seed when none is pinned in the config.
inline Trajectory plan(const Scenario& sc, const PlannerConfig& cfg) {
    cfg.validate();
    switch (cfg.kind) {
        case PlannerKind::dfs: return dfs_plan(sc, cfg.dfs_depth);
        case PlannerKind::ga_tp: return ga_tp_plan(sc, cfg);
        case PlannerKind::ga_iter: return ga_iter_plan(sc, cfg);
        case PlannerKind::fixed: return fixed_plan(sc);
        case PlannerKind::exhaustive: return exhaustive_plan(sc);
        case PlannerKind::circular: {
            double theta = cfg.circular_angle_rad
                               ? *cfg.circular_angle_rad
                               : SplitMix64(cfg.rng_seed)
                                     .child("circular")
                                     .uniform_real(0.0, 2.0 * std::numbers::pi);
            return circular_plan(sc, theta);
        }
    }
    throw UsageError("plan: unhandled planner kind");
}

} // namespace uavpf
