#pragma once

#include <cmath>
#include <vector>

#include "uavpf/association.hpp"
#include "uavpf/power.hpp"
#include "uavpf/ra_dual.hpp"
#include "uavpf/snapshot.hpp"

namespace uavpf {

namespace detail {

// Fairness increment of a (bandwidth, PSD) pair: sum over members of
// ln(1 + rate * dt / bits). Also fills the per-user rates.
inline double slot_reward(const Snapshot& snap, const std::vector<int>& members,
                          const std::vector<double>& beta, const std::vector<double>& psd,
                          std::vector<double>& rate_out) {
    rate_out.assign(snap.user_count(), 0.0);
    double reward = 0.0;
    for (int idx : members) {
        const auto i = static_cast<std::size_t>(idx);
        const double rate =
            beta[i] * spectral_efficiency(psd[i], snap.users[i].gain_over_noise);
        rate_out[i] = rate;
        reward += std::log1p(rate * snap.slot_duration_s / snap.users[i].cumulative_bits);
    }
    return reward;
}

// Alternate bandwidth re-allocation and power control for a fixed
// association until the reward settles. The association never changes here.
inline RrmSolution alternate_ra_pc(const Snapshot& snap, std::vector<int> members,
                                   std::vector<double> beta,
                                   std::vector<double>* reward_trace) {
    RrmSolution sol = RrmSolution::empty(snap.user_count());
    sol.association = std::move(members);

    std::vector<double> psd(snap.user_count(), 0.0);
    const double uniform = snap.power_w / snap.bandwidth_hz;
    for (int idx : sol.association) psd[static_cast<std::size_t>(idx)] = uniform;

    double f = slot_reward(snap, sol.association, beta, psd, sol.rate_bps);
    if (reward_trace) reward_trace->push_back(f);

    // every iterate is feasible, so track the best one; the relaxed power
    // step can cycle the value by a hair around its limit on rare snapshots,
    // in which case the best iterate is returned once the cap is reached
    double best_f = f;
    std::vector<double> best_beta = beta, best_psd = psd, best_rates = sol.rate_bps;

    int it = 0;
    for (; it < rrm_outer_max_iter; ++it) {
        const RaProblem p = make_ra_problem(snap, sol.association, psd);
        beta = scatter_bandwidth(p, ra_solve_exact(p), snap.bandwidth_hz, snap.user_count());
        psd = pc_closed_form(snap, sol.association, beta);
        const double f_new = slot_reward(snap, sol.association, beta, psd, sol.rate_bps);
        if (reward_trace) reward_trace->push_back(f_new);
        if (f_new > best_f) {
            best_f = f_new;
            best_beta = beta;
            best_psd = psd;
            best_rates = sol.rate_bps;
        }
        const bool settled = std::abs(f_new - f) <= rrm_convergence_tol * std::max(1.0, std::abs(f_new));
        f = f_new;
        if (settled) break;
    }

    sol.bandwidth_hz = std::move(best_beta);
    sol.psd_w_hz = std::move(best_psd);
    sol.rate_bps = std::move(best_rates);
    sol.slot_reward = best_f;
    return sol;
}

} // namespace detail

/**
 * Per-slot radio resource management: the reward function of the trajectory
 * MDP. Initializes the PSD uniformly at P/B, picks the association with the
 * incremental water-filling scheme, then alternates bandwidth re-allocation
 * and power control until the fairness increment settles (relative 1e-4).
 *
 * reward_trace, when given, receives the increment after association (index
 * 0) and after each alternation round; the convergence profile of the
 * evaluator is read from it.
 */
inline RrmSolution rrm_evaluate(const Snapshot& snap,
                                std::vector<double>* reward_trace = nullptr) {
    const AssociationResult assoc = user_association(snap);
    if (assoc.members.empty()) {
        if (reward_trace) reward_trace->push_back(0.0);
        return RrmSolution::empty(snap.user_count());
    }
    return detail::alternate_ra_pc(snap, assoc.members, assoc.bandwidth_hz, reward_trace);
}

/**
 * Greatest-SINR baseline: associate only the active feasible user with the
 * best spectral efficiency (lowest id on ties); bandwidth re-allocation and
 * power control are the same as in rrm_evaluate.
 */
inline RrmSolution max_sinr_rrm(const Snapshot& snap,
                                std::vector<double>* reward_trace = nullptr) {
    const double uniform = snap.power_w / snap.bandwidth_hz;
    int best = -1;
    double best_eff = 0.0;
    for (std::size_t i = 0; i < snap.user_count(); ++i) {
        if (!snap.users[i].active) continue;
        const double eff = spectral_efficiency(uniform, snap.users[i].gain_over_noise);
        if (eff <= 0.0) continue;
        if (snap.users[i].qos_rate_bps / eff > snap.bandwidth_hz * (1.0 + 1e-12)) continue;
        if (eff > best_eff) { // ties keep the lowest id (scan order)
            best_eff = eff;
            best = static_cast<int>(i);
        }
    }
    if (best < 0) {
        if (reward_trace) reward_trace->push_back(0.0);
        return RrmSolution::empty(snap.user_count());
    }
    std::vector<double> beta(snap.user_count(), 0.0);
    beta[static_cast<std::size_t>(best)] = snap.bandwidth_hz;
    return detail::alternate_ra_pc(snap, {best}, std::move(beta), reward_trace);
}

} // namespace uavpf
