#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "uavpf/errors.hpp"
#include "uavpf/snapshot.hpp"
#include "uavpf/waterfill.hpp"

namespace uavpf {

/**
 * Power control for a fixed association and fixed bandwidth shares.
 *
 * The fairness increment is relaxed to its first-order form (accurate once
 * the accumulated data dominates the per-slot data), which turns the PSD
 * problem into a water-filling with per-user PSD floors:
 *
 *   rho_i = max(zeta_i, tau_i / (beta_i * lambda) - 1 / omega_i)
 *
 * where tau_i = 1 / cumulative_bits_i, omega_i is the channel gain over
 * noise, and zeta_i = (2^(r_i / beta_i) - 1) / omega_i is the PSD needed to
 * meet the user's rate floor at its bandwidth share. The level lambda is
 * bisected so the spent power sum(rho_i * beta_i) equals the budget.
 *
 * Members with a zero bandwidth share receive zero PSD (only users with a
 * zero rate floor can end up there, so no QoS constraint is lost).
 *
 * Throws InfeasibleError when the floors alone exceed the power budget.
 */
inline std::vector<double> pc_closed_form(const Snapshot& snap, const std::vector<int>& members,
                                          const std::vector<double>& bandwidth_hz) {
    std::vector<double> psd(snap.user_count(), 0.0);

    std::vector<std::size_t> served;
    std::vector<double> tau, omega, zeta, beta;
    for (int idx : members) {
        const auto i = static_cast<std::size_t>(idx);
        if (bandwidth_hz[i] <= 0.0) continue;
        served.push_back(i);
        tau.push_back(1.0 / snap.users[i].cumulative_bits);
        omega.push_back(snap.users[i].gain_over_noise);
        beta.push_back(bandwidth_hz[i]);
        const double r = snap.users[i].qos_rate_bps;
        zeta.push_back(r > 0.0 ? std::expm1(std::numbers::ln2 * r / bandwidth_hz[i]) /
                                     snap.users[i].gain_over_noise
                               : 0.0);
    }
    if (served.empty()) return psd;

    double floor_power = 0.0;
    for (std::size_t m = 0; m < served.size(); ++m) floor_power += zeta[m] * beta[m];
    if (floor_power > snap.power_w * (1.0 + 1e-12))
        throw InfeasibleError("pc_closed_form: rate floors need " + std::to_string(floor_power) +
                              " W, budget is " + std::to_string(snap.power_w) + " W");

    std::vector<double> rho(served.size());
    auto spend = [&](double level) {
        double total = 0.0;
        for (std::size_t m = 0; m < served.size(); ++m) {
            rho[m] = std::max(zeta[m], tau[m] / (beta[m] * level) - 1.0 / omega[m]);
            total += rho[m] * beta[m];
        }
        return total;
    };

    if (floor_power >= snap.power_w * (1.0 - 1e-12)) {
        rho = zeta; // floors consume the whole budget
    } else {
        double lo = 1.0, hi = 1.0;
        for (int it = 0; it < bisection_max_iter && spend(lo) <= snap.power_w; ++it) lo *= 0.5;
        for (int it = 0; it < bisection_max_iter && spend(hi) > snap.power_w; ++it) hi *= 2.0;
        for (int it = 0; it < bisection_max_iter; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double total = spend(mid);
            if (std::abs(total - snap.power_w) <= bisection_rel_tol * snap.power_w) break;
            (total > snap.power_w ? lo : hi) = mid;
        }
        spend(0.5 * (lo + hi));
        // exact repair: keep floors, shrink any overshoot of the slack
        double slack_power = 0.0;
        for (std::size_t m = 0; m < served.size(); ++m)
            slack_power += (rho[m] - zeta[m]) * beta[m];
        if (slack_power > 0.0 && floor_power + slack_power > snap.power_w) {
            const double scale = (snap.power_w - floor_power) / slack_power;
            for (std::size_t m = 0; m < served.size(); ++m)
                rho[m] = zeta[m] + scale * (rho[m] - zeta[m]);
        }
    }

    for (std::size_t m = 0; m < served.size(); ++m) psd[served[m]] = rho[m];
    return psd;
}

} // namespace uavpf
