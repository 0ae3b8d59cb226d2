#pragma once

#include <optional>
#include <utility>

#include <json.hpp>

#include "uavpf/rng.hpp"
#include "uavpf/scenario.hpp"

namespace uavpf {

/**
 * Recipe for a randomized problem instance. Defaults mirror the standard
 * dense-urban configuration (600 m map, 40 m grid, 2 GHz carrier, 23 dBm,
 * -173.8 dBm/Hz noise floor, 20 slots of 3 s); user positions are uniform
 * over the ground square, request windows start uniformly in {0..T} and
 * last uniformly {4..8} slots.
 */
struct ScenarioSpec {
    GridMap map;
    UavDynamics dynamics;
    ChannelParams channel;
    int user_count = 20;
    int num_slots = 20;
    double qos_rate_bps = 5.0e6;
    double initial_data_bits = 1.0;
    // when set, initial data is drawn uniformly from [first, second] bits
    std::optional<std::pair<double, double>> initial_data_uniform_bits;
    int window_min_slots = 4;
    int window_max_slots = 8;
    std::uint64_t seed = 1;
    std::optional<Position> initial_position; // default: centre of the map, top altitude
    double rician_k = 12.0;

    ScenarioSpec with_seed(std::uint64_t s) const {
        ScenarioSpec out = *this;
        out.seed = s;
        return out;
    }
};

/**
 * Deterministic expansion of a spec into a concrete Scenario. Users are
 * drawn from the spec seed's "scenario" stream in a fixed per-user order
 * (x, y, start, duration, initial data), so the first N users of a larger
 * population equal the users of a smaller one under the same seed.
 */
inline Scenario generate_scenario(const ScenarioSpec& spec) {
    Scenario sc;
    sc.map = spec.map;
    sc.dynamics = spec.dynamics;
    sc.channel = spec.channel;
    sc.num_slots = spec.num_slots;
    sc.seed = spec.seed;
    sc.rician_k = spec.rician_k;
    const Position q0 = spec.initial_position.value_or(
        Position{spec.map.width_m / 2.0, spec.map.width_m / 2.0, spec.map.max_alt_m});
    sc.initial_position = sc.map.snap(q0);

    SplitMix64 rng = SplitMix64(spec.seed).child("scenario");
    sc.users.reserve(static_cast<std::size_t>(spec.user_count));
    for (int i = 0; i < spec.user_count; ++i) {
        User u;
        u.id = i;
        u.position.x_m = rng.uniform_real(0.0, spec.map.width_m);
        u.position.y_m = rng.uniform_real(0.0, spec.map.width_m);
        u.position.z_m = 0.0;
        u.start_slot = static_cast<int>(rng.uniform_int(0, spec.num_slots));
        u.duration_slots =
            static_cast<int>(rng.uniform_int(spec.window_min_slots, spec.window_max_slots));
        u.qos_rate_bps = spec.qos_rate_bps;
        u.initial_data_bits =
            spec.initial_data_uniform_bits
                ? rng.uniform_real(spec.initial_data_uniform_bits->first,
                                   spec.initial_data_uniform_bits->second)
                : spec.initial_data_bits;
        sc.users.push_back(u);
    }
    sc.validate();
    return sc;
}

inline nlohmann::json to_json(const ScenarioSpec& s) {
    nlohmann::json j;
    j["map"] = {{"width_m", s.map.width_m},
                {"grid_step_m", s.map.grid_step_m},
                {"min_alt_m", s.map.min_alt_m},
                {"max_alt_m", s.map.max_alt_m}};
    j["dynamics"] = {{"max_speed_mps", s.dynamics.max_speed_mps},
                     {"slot_duration_s", s.dynamics.slot_duration_s}};
    j["channel"] = {{"env_a", s.channel.env_a},
                    {"env_b", s.channel.env_b},
                    {"excess_los_db", s.channel.excess_los_db},
                    {"excess_nlos_db", s.channel.excess_nlos_db},
                    {"carrier_hz", s.channel.carrier_hz},
                    {"noise_psd_dbm_hz", s.channel.noise_psd_dbm_hz},
                    {"bandwidth_hz", s.channel.bandwidth_hz},
                    {"tx_power_dbm", s.channel.tx_power_dbm}};
    j["user_count"] = s.user_count;
    j["T"] = s.num_slots;
    j["qos_rate_bps"] = s.qos_rate_bps;
    j["initial_data_bits"] = s.initial_data_bits;
    if (s.initial_data_uniform_bits)
        j["initial_data_uniform_bits"] = {s.initial_data_uniform_bits->first,
                                          s.initial_data_uniform_bits->second};
    j["window_min_slots"] = s.window_min_slots;
    j["window_max_slots"] = s.window_max_slots;
    j["seed"] = s.seed;
    j["rician_k"] = s.rician_k;
    if (s.initial_position)
        j["initial_position"] = {{"x_m", s.initial_position->x_m},
                                 {"y_m", s.initial_position->y_m},
                                 {"z_m", s.initial_position->z_m}};
    return j;
}

inline ScenarioSpec scenario_spec_from_json(const nlohmann::json& j) {
    using detail::optional_field;
    ScenarioSpec s;
    if (j.contains("map")) {
        const auto& jm = j.at("map");
        s.map.width_m = optional_field(jm, "width_m", s.map.width_m);
        s.map.grid_step_m = optional_field(jm, "grid_step_m", s.map.grid_step_m);
        s.map.min_alt_m = optional_field(jm, "min_alt_m", s.map.min_alt_m);
        s.map.max_alt_m = optional_field(jm, "max_alt_m", s.map.max_alt_m);
    }
    if (j.contains("dynamics")) {
        const auto& jd = j.at("dynamics");
        s.dynamics.max_speed_mps = optional_field(jd, "max_speed_mps", s.dynamics.max_speed_mps);
        s.dynamics.slot_duration_s =
            optional_field(jd, "slot_duration_s", s.dynamics.slot_duration_s);
    }
    if (j.contains("channel")) {
        const auto& jc = j.at("channel");
        s.channel.env_a = optional_field(jc, "env_a", s.channel.env_a);
        s.channel.env_b = optional_field(jc, "env_b", s.channel.env_b);
        s.channel.excess_los_db = optional_field(jc, "excess_los_db", s.channel.excess_los_db);
        s.channel.excess_nlos_db =
            optional_field(jc, "excess_nlos_db", s.channel.excess_nlos_db);
        s.channel.carrier_hz = optional_field(jc, "carrier_hz", s.channel.carrier_hz);
        s.channel.noise_psd_dbm_hz =
            optional_field(jc, "noise_psd_dbm_hz", s.channel.noise_psd_dbm_hz);
        s.channel.bandwidth_hz = optional_field(jc, "bandwidth_hz", s.channel.bandwidth_hz);
        s.channel.tx_power_dbm = optional_field(jc, "tx_power_dbm", s.channel.tx_power_dbm);
    }
    s.user_count = optional_field(j, "user_count", s.user_count);
    s.num_slots = optional_field(j, "T", s.num_slots);
    s.qos_rate_bps = optional_field(j, "qos_rate_bps", s.qos_rate_bps);
    s.initial_data_bits = optional_field(j, "initial_data_bits", s.initial_data_bits);
    if (j.contains("initial_data_uniform_bits")) {
        const auto& r = j.at("initial_data_uniform_bits");
        s.initial_data_uniform_bits = {r.at(0).get<double>(), r.at(1).get<double>()};
    }
    s.window_min_slots = optional_field(j, "window_min_slots", s.window_min_slots);
    s.window_max_slots = optional_field(j, "window_max_slots", s.window_max_slots);
    s.seed = optional_field<std::uint64_t>(j, "seed", s.seed);
    s.rician_k = optional_field(j, "rician_k", s.rician_k);
    if (j.contains("initial_position")) {
        const auto& jq = j.at("initial_position");
        s.initial_position = Position{jq.at("x_m").get<double>(), jq.at("y_m").get<double>(),
                                      jq.at("z_m").get<double>()};
    }
    return s;
}

} // namespace uavpf
