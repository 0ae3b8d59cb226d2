#pragma once

#include <cmath>
#include <numbers>

#include "uavpf/errors.hpp"
#include "uavpf/grid.hpp"
#include "uavpf/user.hpp"

namespace uavpf {

inline constexpr double speed_of_light_mps = 299792458.0;

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

/**
 * Air-to-ground radio constants. Everything downstream of this struct works
 * in linear SI units (Hz, W, W/Hz); the dB/dBm fields are converted exactly
 * once, here.
 */
struct ChannelParams {
    double env_a = 9.64;             // environment parameter a (dense urban)
    double env_b = 0.06;             // environment parameter b
    double excess_los_db = 1.0;      // mean excess pathloss, line-of-sight
    double excess_nlos_db = 40.0;    // mean excess pathloss, non-line-of-sight
    double carrier_hz = 2.0e9;
    double noise_psd_dbm_hz = -173.8;
    double bandwidth_hz = 2.0e6;     // budget B
    double tx_power_dbm = 23.0;      // budget P

    double noise_psd_w_hz() const { return dbm_to_watt(noise_psd_dbm_hz); }
    double tx_power_w() const { return dbm_to_watt(tx_power_dbm); }

    void validate() const {
        if (env_a <= 0.0) throw UsageError("channel.env_a must be > 0");
        if (bandwidth_hz <= 0.0) throw UsageError("channel.bandwidth_hz must be > 0");
        if (carrier_hz <= 0.0) throw UsageError("channel.carrier_hz must be > 0");
    }
};

/**
 * Probability of a line-of-sight link between a flying point q and a ground
 * point: 1 / (1 + a * exp(-b * (theta - a))) with the elevation angle theta
 * in degrees (the a, b constants are calibrated for degrees).
 */
inline double los_probability(const Position& q, const Position& ground,
                              const ChannelParams& ch) {
    const double d = distance(q, ground);
    if (d <= 0.0)
        throw DegenerateGeometryError("los_probability: zero link distance");
    const double theta_deg =
        std::asin((q.z_m - ground.z_m) / d) * 180.0 / std::numbers::pi;
    return 1.0 / (1.0 + ch.env_a * std::exp(-ch.env_b * (theta_deg - ch.env_a)));
}

/**
 * Mean pathloss in dB: free-space term 20*log10(4*pi*f*d/c) plus the excess
 * terms weighted by the LoS probability.
 */
inline double average_pathloss_db(const Position& q, const Position& ground,
                                  const ChannelParams& ch) {
    const double d = distance(q, ground);
    if (d <= 0.0)
        throw DegenerateGeometryError("average_pathloss_db: zero link distance");
    const double fspl =
        20.0 * std::log10(4.0 * std::numbers::pi * ch.carrier_hz * d / speed_of_light_mps);
    const double p_los = los_probability(q, ground, ch);
    return fspl + p_los * ch.excess_los_db + (1.0 - p_los) * ch.excess_nlos_db;
}

// Channel gain over noise, 10^(-pathloss/10) / N0, units 1/(W/Hz). The SNR of
// a link with power spectral density rho is simply rho * gain_over_noise.
inline double gain_over_noise(const Position& q, const Position& ground,
                              const ChannelParams& ch) {
    return db_to_linear(-average_pathloss_db(q, ground, ch)) / ch.noise_psd_w_hz();
}

// Spectral efficiency log2(1 + rho * omega) in bit/s/Hz for PSD rho and
// precomputed gain-over-noise omega.
inline double spectral_efficiency(double psd_w_hz, double omega) {
    return std::log2(1.0 + psd_w_hz * omega);
}

inline double spectral_efficiency(const Position& q, const User& u, double psd_w_hz,
                                  const ChannelParams& ch) {
    return spectral_efficiency(psd_w_hz, gain_over_noise(q, u.position, ch));
}

// Per-slot data rate in bit/s: bandwidth times spectral efficiency, zero for
// a user outside its request window.
inline double data_rate(bool active, double bandwidth_hz, double spectral_eff) {
    return active ? bandwidth_hz * spectral_eff : 0.0;
}

} // namespace uavpf
