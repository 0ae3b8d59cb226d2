#pragma once

#include <algorithm>
#include <vector>

#include "uavpf/errors.hpp"
#include "uavpf/trajectory.hpp"

namespace uavpf {

namespace detail {

// In-place state update with undo, so tree search can branch without
// copying the whole state at every node.
struct StateUndo {
    int slot;
    GridPoint pos;
    std::vector<std::pair<std::size_t, double>> changed;
};

inline void apply_with_undo(EpisodeState& st, const Scenario& sc, const GridPoint& q,
                            const RrmSolution& sol, StateUndo& undo) {
    undo.slot = st.slot;
    undo.pos = st.uav_position;
    undo.changed.clear();
    for (int idx : sol.association) {
        const auto i = static_cast<std::size_t>(idx);
        undo.changed.emplace_back(i, st.cumulative_bits[i]);
    }
    st.apply(sc, q, sol);
}

inline void revert(EpisodeState& st, const StateUndo& undo) {
    st.slot = undo.slot;
    st.uav_position = undo.pos;
    for (const auto& [i, bits] : undo.changed) st.cumulative_bits[i] = bits;
}

// Best cumulative reward over all feasible paths of the given length,
// starting from `from`. Moves are enumerated in lexicographic lattice order
// and ties resolve by strict comparison, so the maximizing path is the
// lexicographically first one; best_first_move reports its first step.
inline double best_subpath(const SlotEvaluator& eval, EpisodeState& st, const GridPoint& from,
                           int length, GridPoint* best_first_move,
                           RrmSolution* best_first_solution) {
    const Scenario& sc = eval.scenario();
    double best = -1.0; // rewards are sums of ln(1+x) >= 0
    StateUndo undo;
    for (const GridPoint& move : reachable_set(sc.map, sc.dynamics, from)) {
        RrmSolution sol = eval.evaluate(st, move);
        double value = sol.slot_reward;
        if (length > 1) {
            apply_with_undo(st, sc, move, sol, undo);
            value += best_subpath(eval, st, move, length - 1, nullptr, nullptr);
            revert(st, undo);
        }
        if (value > best) {
            best = value;
            if (best_first_move) *best_first_move = move;
            if (best_first_solution) *best_first_solution = std::move(sol);
        }
    }
    return best;
}

} // namespace detail

/**
 * Limited-depth tree search: at every slot, enumerate all sub-trajectories
 * of length min(depth, slots left) in the reachability tree, evaluate their
 * cumulative reward with a sequentially updated episode state, commit the
 * first move of the best one, and repeat. depth = 1 is the greedy planner;
 * depth = T explores the whole tree and is exhaustive.
 */
inline Trajectory dfs_plan(const Scenario& sc, int depth) {
    if (depth < 1) throw UsageError("dfs_plan: depth must be >= 1");
    const SlotEvaluator eval(sc);
    Trajectory traj;
    traj.start = sc.initial_position;
    EpisodeState st = EpisodeState::initial(sc);
    for (int t = 1; t <= sc.num_slots; ++t) {
        const int length = std::min(depth, sc.num_slots - t + 1);
        GridPoint move;
        RrmSolution sol;
        detail::best_subpath(eval, st, st.uav_position, length, &move, &sol);
        traj.total_pf += sol.slot_reward;
        st.apply(sc, move, sol);
        traj.positions.push_back(move);
        traj.solutions.push_back(std::move(sol));
    }
    return traj;
}

/**
 * Full enumeration of every feasible trajectory; the oracle planner for tiny
 * instances. Guarded by max|reachable_set|^T <= 1e6. Ties resolve to the
 * lexicographically first trajectory, identical to dfs_plan with full depth.
 */
inline Trajectory exhaustive_plan(const Scenario& sc) {
    std::size_t max_branch = 1;
    const int n_ij = sc.map.max_ij();
    for (int i = 0; i <= n_ij; ++i)
        for (int j = 0; j <= n_ij; ++j)
            for (int k = sc.map.min_k(); k <= sc.map.max_k(); ++k)
                max_branch = std::max(
                    max_branch, reachable_set(sc.map, sc.dynamics, GridPoint{i, j, k}).size());
    double paths = 1.0;
    for (int t = 0; t < sc.num_slots; ++t) {
        paths *= static_cast<double>(max_branch);
        if (paths > 1e6)
            throw SizeGuardError("exhaustive_plan: up to " + std::to_string(max_branch) + "^" +
                                 std::to_string(sc.num_slots) +
                                 " trajectories exceed the 1e6 enumeration guard");
    }

    const SlotEvaluator eval(sc);
    std::vector<GridPoint> current, best;
    double best_value = -1.0;
    EpisodeState st = EpisodeState::initial(sc);

    // Leaf-level comparison over every full path, enumerated in lexicographic
    // order with strict improvement, so ties pick the first path.
    auto enumerate = [&](auto&& self, const GridPoint& from, int remaining,
                         double running) -> void {
        for (const GridPoint& move : reachable_set(sc.map, sc.dynamics, from)) {
            RrmSolution sol = eval.evaluate(st, move);
            const double value = running + sol.slot_reward;
            current.push_back(move);
            if (remaining == 1) {
                if (value > best_value) {
                    best_value = value;
                    best = current;
                }
            } else {
                detail::StateUndo u;
                detail::apply_with_undo(st, sc, move, sol, u);
                self(self, move, remaining - 1, value);
                detail::revert(st, u);
            }
            current.pop_back();
        }
    };
    enumerate(enumerate, sc.initial_position, sc.num_slots, 0.0);

    Trajectory traj = replay_with_rrm(eval, best);
    traj.start = sc.initial_position;
    return traj;
}

} // namespace uavpf
