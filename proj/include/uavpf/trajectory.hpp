#pragma once

#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "uavpf/rrm.hpp"
#include "uavpf/scenario.hpp"
#include "uavpf/snapshot.hpp"

namespace uavpf {

enum class PlannerKind { dfs, ga_tp, ga_iter, circular, fixed, exhaustive };

inline const char* to_string(PlannerKind k) {
    switch (k) {
        case PlannerKind::dfs: return "dfs";
        case PlannerKind::ga_tp: return "ga-tp";
        case PlannerKind::ga_iter: return "ga-iter";
        case PlannerKind::circular: return "circular";
        case PlannerKind::fixed: return "fixed";
        case PlannerKind::exhaustive: return "exhaustive";
    }
    return "?";
}

inline PlannerKind planner_kind_from_string(const std::string& s) {
    if (s == "dfs") return PlannerKind::dfs;
    if (s == "ga-tp" || s == "ga_tp") return PlannerKind::ga_tp;
    if (s == "ga-iter" || s == "ga_iter") return PlannerKind::ga_iter;
    if (s == "circular") return PlannerKind::circular;
    if (s == "fixed") return PlannerKind::fixed;
    if (s == "exhaustive") return PlannerKind::exhaustive;
    throw UsageError("unknown planner kind: " + s);
}

struct GaParams {
    int generations = 300;
    int population = 30;
    int elites = 6;
    double mutation_prob = 0.1;
};

struct PlannerConfig {
    PlannerKind kind = PlannerKind::dfs;
    int dfs_depth = 5;
    GaParams ga;                 // desk-scale defaults
    bool paper_scale = false;    // full-scale genetic search: 10000 x 50, 10 elites
    std::uint64_t rng_seed = 0;
    std::optional<double> circular_angle_rad; // drawn from rng_seed when unset

    GaParams effective_ga() const {
        if (!paper_scale) return ga;
        return GaParams{10000, 50, 10, 0.1};
    }

    void validate() const {
        if (dfs_depth < 1) throw UsageError("planner.depth must be >= 1");
        const GaParams g = effective_ga();
        if (g.population < 1 || g.elites < 1 || g.elites > g.population)
            throw UsageError("planner.ga requires population >= elites >= 1");
        if (g.mutation_prob < 0.0 || g.mutation_prob > 1.0)
            throw UsageError("planner.ga.mutation_prob must be in [0, 1]");
        if (g.generations < 0) throw UsageError("planner.ga.generations must be >= 0");
    }

    std::string name() const {
        if (kind == PlannerKind::dfs) return "dfs-" + std::to_string(dfs_depth);
        return to_string(kind);
    }
};

// A full flight: the position at the start of each served slot (t = 1..T),
// the per-slot radio solutions, and the accumulated fairness value. `start`
// is the position before the first slot; for most planners it is the
// scenario's initial position, for the fixed and orbit baselines it is the
// baseline's own anchor point.
struct Trajectory {
    GridPoint start;
    std::vector<GridPoint> positions;
    std::vector<RrmSolution> solutions;
    double total_pf = 0.0;
};

/**
 * Slot-reward oracle shared by all planners. Channel gains depend only on
 * the (static) users and the queried grid point, so they are memoized per
 * position; rewards themselves are always recomputed because they depend on
 * the path taken so far (the cumulative-throughput denominators make the
 * reward path-dependent, which is also why search trees cannot share
 * rewards across branches).
 */
class SlotEvaluator {
public:
    explicit SlotEvaluator(const Scenario& sc) : sc_(sc) {}

    const Scenario& scenario() const { return sc_; }

    const std::vector<double>& gains(const GridPoint& q) const {
        auto it = cache_.find(q);
        if (it == cache_.end()) it = cache_.emplace(q, position_gains(sc_, q)).first;
        return it->second;
    }

    RrmSolution evaluate(const EpisodeState& st, const GridPoint& q,
                         std::vector<double>* trace = nullptr) const {
        const Snapshot snap = build_snapshot(sc_, st, q, &gains(q));
        return rrm_evaluate(snap, trace);
    }

private:
    const Scenario& sc_;
    mutable std::map<GridPoint, std::vector<double>> cache_;
};

// Replays a fixed position sequence with the full per-slot optimization,
// starting from the scenario's initial state.
inline Trajectory replay_with_rrm(const SlotEvaluator& eval,
                                  const std::vector<GridPoint>& positions) {
    const Scenario& sc = eval.scenario();
    Trajectory traj;
    traj.start = sc.initial_position;
    traj.positions = positions;
    traj.solutions.reserve(positions.size());
    EpisodeState st = EpisodeState::initial(sc);
    for (const GridPoint& q : positions) {
        RrmSolution sol = eval.evaluate(st, q);
        traj.total_pf += sol.slot_reward;
        st.apply(sc, q, sol);
        traj.solutions.push_back(std::move(sol));
    }
    return traj;
}

// Reachability-chain check (including the hop from the start position).
inline bool trajectory_feasible(const Scenario& sc, const Trajectory& traj) {
    const double reach = sc.dynamics.reach_radius_m() / sc.map.grid_step_m;
    const double r2 = reach * reach * (1.0 + 1e-12);
    if (!sc.map.contains(traj.start)) return false;
    GridPoint prev = traj.start;
    for (const GridPoint& q : traj.positions) {
        if (!sc.map.contains(q)) return false;
        const double di = q.i - prev.i, dj = q.j - prev.j, dk = q.k - prev.k;
        if (di * di + dj * dj + dk * dk > r2) return false;
        prev = q;
    }
    return true;
}

} // namespace uavpf
