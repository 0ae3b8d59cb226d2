#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "uavpf/channel.hpp"
#include "uavpf/snapshot.hpp"
#include "uavpf/waterfill.hpp"

namespace uavpf {

// Objective comparisons inside the greedy association use this absolute
// tolerance; equal-within-tolerance candidates resolve to the lowest user id.
inline constexpr double association_tie_tol = 1e-12;

struct AssociationResult {
    std::vector<int> members;          // sorted user indices
    std::vector<double> bandwidth_hz;  // per user (full-length vector)
    double objective = 0.0;            // sum of ln(1 + w_i * beta_i), nats
};

namespace detail {

// Objective value of a candidate set under fixed spectral efficiencies;
// returns -inf when the floors are infeasible.
inline double evaluate_set(const Snapshot& snap, const std::vector<int>& members,
                           const std::vector<double>& eff, WaterfillWeights& scratch,
                           std::vector<double>* beta_out = nullptr) {
    scratch.weight.clear();
    scratch.floor_hz.clear();
    double floor_sum = 0.0;
    for (int idx : members) {
        const auto i = static_cast<std::size_t>(idx);
        scratch.weight.push_back(snap.fairness_weight(i, eff[i]));
        const double fl = snap.users[i].qos_rate_bps / eff[i];
        scratch.floor_hz.push_back(fl);
        floor_sum += fl;
    }
    if (floor_sum > snap.bandwidth_hz * (1.0 + 1e-12))
        return -std::numeric_limits<double>::infinity();
    const WaterfillResult wf = waterfill_bandwidth(scratch, snap.bandwidth_hz);
    double obj = 0.0;
    for (std::size_t m = 0; m < members.size(); ++m)
        obj += std::log1p(scratch.weight[m] * wf.bandwidth_hz[m]);
    if (beta_out) {
        beta_out->assign(snap.user_count(), 0.0);
        for (std::size_t m = 0; m < members.size(); ++m)
            (*beta_out)[static_cast<std::size_t>(members[m])] = wf.bandwidth_hz[m];
    }
    return obj;
}

} // namespace detail

/**
 * Incremental user association under uniform power spectral density P/B.
 *
 * Starting from the empty set, repeatedly water-fill every one-user
 * extension whose rate floors still fit in the bandwidth budget and adopt
 * the best extension; stop as soon as no extension improves the objective.
 * The empty set is always feasible (objective 0), so the routine never
 * fails. Runs in O(I^2) set evaluations.
 */
inline AssociationResult user_association(const Snapshot& snap) {
    const std::size_t n = snap.user_count();
    const double uniform_psd = snap.power_w / snap.bandwidth_hz;

    std::vector<double> eff(n, 0.0);
    std::vector<int> candidates;
    for (std::size_t i = 0; i < n; ++i) {
        if (!snap.users[i].active) continue;
        eff[i] = spectral_efficiency(uniform_psd, snap.users[i].gain_over_noise);
        if (eff[i] > 0.0) candidates.push_back(static_cast<int>(i));
    }

    AssociationResult result;
    result.bandwidth_hz.assign(n, 0.0);

    WaterfillWeights scratch;
    std::vector<int> trial;
    std::vector<char> in_set(n, 0);

    while (true) {
        int best_candidate = -1;
        double best_obj = result.objective;
        for (int c : candidates) {
            if (in_set[static_cast<std::size_t>(c)]) continue;
            trial = result.members;
            trial.insert(std::upper_bound(trial.begin(), trial.end(), c), c);
            const double obj = detail::evaluate_set(snap, trial, eff, scratch);
            // strict improvement required; candidates are scanned in id order,
            // so ties keep the lowest id
            if (obj > best_obj + association_tie_tol) {
                best_obj = obj;
                best_candidate = c;
            }
        }
        if (best_candidate < 0) break;
        result.members.insert(
            std::upper_bound(result.members.begin(), result.members.end(), best_candidate),
            best_candidate);
        in_set[static_cast<std::size_t>(best_candidate)] = 1;
        result.objective = best_obj;
    }

    if (!result.members.empty())
        result.objective =
            detail::evaluate_set(snap, result.members, eff, scratch, &result.bandwidth_hz);
    return result;
}

} // namespace uavpf
