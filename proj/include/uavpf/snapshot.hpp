#pragma once

#include <cmath>
#include <vector>

#include "uavpf/channel.hpp"
#include "uavpf/grid.hpp"
#include "uavpf/scenario.hpp"
#include "uavpf/user.hpp"

namespace uavpf {

// Everything the per-slot radio resource problem needs to know about one
// user. cumulative_bits is the denominator of the fairness increment and is
// strictly positive (it starts at the user's initial_data_bits).
struct SnapshotUser {
    bool active = false;          // inside its request window this slot
    double gain_over_noise = 0.0; // omega_i, 1/(W/Hz)
    double cumulative_bits = 1.0; // sum of earlier per-slot data, in bits
    double qos_rate_bps = 0.0;    // r_i
};

// The per-slot problem: maximize sum_{i in A} ln(1 + rate_i * dt / bits_i)
// over the association set A, bandwidth shares and power spectral densities,
// subject to the bandwidth budget, the power budget and the per-user rate
// floors.
struct Snapshot {
    std::vector<SnapshotUser> users;
    double bandwidth_hz = 2.0e6; // B
    double power_w = 0.2;        // P
    double slot_duration_s = 3.0;

    std::size_t user_count() const { return users.size(); }

    // Fairness weight of a served user at bandwidth share beta and spectral
    // efficiency e: the slot reward term is ln(1 + w * beta) with
    // w = e * dt / bits, so that the term equals the increment of
    // ln(cumulative bits).
    double fairness_weight(std::size_t i, double spectral_eff) const {
        return spectral_eff * slot_duration_s / users[i].cumulative_bits;
    }
};

// Solution of one per-slot problem. Vectors are indexed by user; entries of
// users outside the association set are zero.
struct RrmSolution {
    std::vector<int> association;      // sorted user indices
    std::vector<double> bandwidth_hz;  // beta_i
    std::vector<double> psd_w_hz;      // rho_i
    std::vector<double> rate_bps;      // beta_i * log2(1 + rho_i * omega_i)
    double slot_reward = 0.0;          // optimal fairness increment, nats

    static RrmSolution empty(std::size_t user_count) {
        RrmSolution s;
        s.bandwidth_hz.assign(user_count, 0.0);
        s.psd_w_hz.assign(user_count, 0.0);
        s.rate_bps.assign(user_count, 0.0);
        return s;
    }
};

// Mutable per-episode state: the slot about to be served, the vehicle
// position, and each user's accumulated data (>= initial_data_bits).
struct EpisodeState {
    int slot = 1;
    GridPoint uav_position;
    std::vector<double> cumulative_bits;

    static EpisodeState initial(const Scenario& sc) {
        EpisodeState st;
        st.slot = 1;
        st.uav_position = sc.initial_position;
        st.cumulative_bits.reserve(sc.users.size());
        for (const auto& u : sc.users) st.cumulative_bits.push_back(u.initial_data_bits);
        return st;
    }

    // Advance past a served slot: accumulated data grows by rate * slot
    // duration for every associated user.
    void apply(const Scenario& sc, const GridPoint& q, const RrmSolution& sol) {
        uav_position = q;
        for (int idx : sol.association)
            cumulative_bits[static_cast<std::size_t>(idx)] +=
                sol.rate_bps[static_cast<std::size_t>(idx)] * sc.dynamics.slot_duration_s;
        ++slot;
    }
};

// Builds the per-slot problem for position q. Channel gains depend only on
// the position and the (static) users, so callers that revisit positions can
// pass a cached gain vector.
inline Snapshot build_snapshot(const Scenario& sc, const EpisodeState& st,
                               const GridPoint& q,
                               const std::vector<double>* cached_gains = nullptr) {
    Snapshot snap;
    snap.bandwidth_hz = sc.channel.bandwidth_hz;
    snap.power_w = sc.channel.tx_power_w();
    snap.slot_duration_s = sc.dynamics.slot_duration_s;
    snap.users.resize(sc.users.size());
    const Position qp = sc.map.position_of(q);
    for (std::size_t i = 0; i < sc.users.size(); ++i) {
        SnapshotUser& su = snap.users[i];
        su.active = is_active(sc.users[i], st.slot);
        su.gain_over_noise = cached_gains ? (*cached_gains)[i]
                                          : gain_over_noise(qp, sc.users[i].position, sc.channel);
        su.cumulative_bits = st.cumulative_bits[i];
        su.qos_rate_bps = sc.users[i].qos_rate_bps;
    }
    return snap;
}

inline std::vector<double> position_gains(const Scenario& sc, const GridPoint& q) {
    std::vector<double> g(sc.users.size());
    const Position qp = sc.map.position_of(q);
    for (std::size_t i = 0; i < sc.users.size(); ++i)
        g[i] = gain_over_noise(qp, sc.users[i].position, sc.channel);
    return g;
}

} // namespace uavpf
