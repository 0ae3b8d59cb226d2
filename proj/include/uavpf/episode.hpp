#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "uavpf/planner_baselines.hpp"
#include "uavpf/trajectory.hpp"

namespace uavpf {

struct EpisodeResult {
    std::string planner;
    std::uint64_t scenario_seed = 0;
    Trajectory trajectory;
    double total_pf = 0.0;
    std::vector<int> served_users; // sorted union of the per-slot associations
    double pct_served = 0.0;
    double wall_clock_s = 0.0; // telemetry; excluded from determinism guarantees
    std::string status = "ok";
};

/**
 * Re-checks a stored trajectory against the raw scenario: reachability
 * chain, budget and floor constraints of every slot solution (relative
 * tolerance 1e-6), stored rates and rewards against values recomputed from
 * the positions, and the telescoping identity
 *
 *   sum_t f_t + sum_{i served} ln(initial bits) = sum_{i served} ln(final bits)
 *
 * at relative 1e-9. Throws Error with a slot-stamped message on the first
 * violation.
 */
inline void audit_trajectory(const Scenario& sc, const Trajectory& traj, double tol = 1e-6) {
    if (!trajectory_feasible(sc, traj))
        throw Error("audit: trajectory violates the reachability chain");
    if (traj.positions.size() != static_cast<std::size_t>(sc.num_slots) ||
        traj.solutions.size() != traj.positions.size())
        throw Error("audit: trajectory length differs from the scenario horizon");

    EpisodeState st = EpisodeState::initial(sc);
    double reward_sum = 0.0;
    for (int t = 1; t <= sc.num_slots; ++t) {
        const auto ti = static_cast<std::size_t>(t - 1);
        const GridPoint& q = traj.positions[ti];
        const RrmSolution& sol = traj.solutions[ti];
        const std::string where = " at slot " + std::to_string(t);
        const Snapshot snap = build_snapshot(sc, st, q);

        double beta_sum = 0.0, power_sum = 0.0, reward = 0.0;
        std::vector<char> member(sc.users.size(), 0);
        for (int idx : sol.association) member[static_cast<std::size_t>(idx)] = 1;
        for (std::size_t i = 0; i < sc.users.size(); ++i) {
            if (sol.bandwidth_hz[i] < -tol * snap.bandwidth_hz)
                throw Error("audit: negative bandwidth share" + where);
            if (sol.psd_w_hz[i] < 0.0) throw Error("audit: negative PSD" + where);
            if (!member[i] && sol.bandwidth_hz[i] != 0.0)
                throw Error("audit: bandwidth assigned outside the association" + where);
            beta_sum += sol.bandwidth_hz[i];
            power_sum += sol.psd_w_hz[i] * sol.bandwidth_hz[i];
        }
        if (beta_sum > snap.bandwidth_hz * (1.0 + tol))
            throw Error("audit: bandwidth budget violated" + where);
        if (power_sum > snap.power_w * (1.0 + tol))
            throw Error("audit: power budget violated" + where);
        for (int idx : sol.association) {
            const auto i = static_cast<std::size_t>(idx);
            if (!snap.users[i].active)
                throw Error("audit: inactive user associated" + where);
            const double rate = sol.bandwidth_hz[i] *
                                spectral_efficiency(sol.psd_w_hz[i], snap.users[i].gain_over_noise);
            if (std::abs(rate - sol.rate_bps[i]) > tol * std::max(1.0, rate))
                throw Error("audit: stored rate differs from recomputation" + where);
            if (rate < snap.users[i].qos_rate_bps * (1.0 - tol))
                throw Error("audit: rate floor violated" + where);
            reward += std::log1p(rate * snap.slot_duration_s / snap.users[i].cumulative_bits);
        }
        if (std::abs(reward - sol.slot_reward) > 1e-9 * std::max(1.0, std::abs(reward)))
            throw Error("audit: stored reward differs from recomputation" + where);
        reward_sum += reward;
        st.apply(sc, q, sol);
    }
    if (std::abs(reward_sum - traj.total_pf) > 1e-9 * std::max(1.0, std::abs(reward_sum)))
        throw Error("audit: total fairness differs from the per-slot sum");

    // telescoping identity against the final accumulated data
    std::set<int> served;
    for (const RrmSolution& sol : traj.solutions)
        served.insert(sol.association.begin(), sol.association.end());
    double lhs = reward_sum, rhs = 0.0;
    for (int idx : served) {
        const auto i = static_cast<std::size_t>(idx);
        lhs += std::log(sc.users[i].initial_data_bits);
        rhs += std::log(st.cumulative_bits[i]);
    }
    if (std::abs(lhs - rhs) > 1e-9 * std::max(1.0, std::abs(rhs)))
        throw Error("audit: telescoped fairness identity violated");
}

// Fairness value in telescoped form, straight from the request windows'
// outcome: sum over served users of ln(final bits) - ln(initial bits).
// Equals the sum of the per-slot rewards exactly (up to rounding).
inline double compute_pf(const Scenario& sc, const Trajectory& traj) {
    EpisodeState st = EpisodeState::initial(sc);
    std::set<int> served;
    for (std::size_t ti = 0; ti < traj.positions.size(); ++ti) {
        const RrmSolution& sol = traj.solutions[ti];
        served.insert(sol.association.begin(), sol.association.end());
        st.apply(sc, traj.positions[ti], sol);
    }
    double pf = 0.0;
    for (int idx : served) {
        const auto i = static_cast<std::size_t>(idx);
        pf += std::log(st.cumulative_bits[i]) - std::log(sc.users[i].initial_data_bits);
    }
    return pf;
}

/**
 * Runs one full episode: plan, audit every slot solution, collect the
 * served-user set and timing. Planner and solver errors propagate to the
 * caller (sweeps turn them into status rows).
 */
inline EpisodeResult run_episode(const Scenario& sc, const PlannerConfig& cfg) {
    EpisodeResult res;
    res.planner = cfg.name();
    res.scenario_seed = sc.seed;
    const auto t0 = std::chrono::steady_clock::now();
    res.trajectory = plan(sc, cfg);
    res.wall_clock_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    audit_trajectory(sc, res.trajectory);
    res.total_pf = res.trajectory.total_pf;
    std::set<int> served;
    for (const RrmSolution& sol : res.trajectory.solutions)
        served.insert(sol.association.begin(), sol.association.end());
    res.served_users.assign(served.begin(), served.end());
    res.pct_served =
        sc.users.empty() ? 0.0
                         : static_cast<double>(res.served_users.size()) /
                               static_cast<double>(sc.users.size());
    return res;
}

} // namespace uavpf
