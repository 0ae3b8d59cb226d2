#pragma once

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "uavpf/channel.hpp"
#include "uavpf/errors.hpp"
#include "uavpf/grid.hpp"
#include "uavpf/user.hpp"

namespace uavpf {

/**
 * One complete, immutable problem instance: the flight map, vehicle limits,
 * radio constants, the user population and the service horizon. Everything
 * downstream (RRM, planners, harness) is a pure function of a Scenario.
 */
struct Scenario {
    GridMap map;
    UavDynamics dynamics;
    ChannelParams channel;
    std::vector<User> users;
    int num_slots = 20;            // T; service slots are t = 1..T
    std::uint64_t seed = 0;
    GridPoint initial_position{4, 4, 5};
    double rician_k = 12.0;        // recorded in files for fidelity; the mean-pathloss
                                   // rate model does not use it

    void validate() const {
        map.validate();
        dynamics.validate();
        channel.validate();
        if (num_slots < 1) throw UsageError("scenario.T must be >= 1");
        if (!map.contains(initial_position))
            throw InvalidPositionError("scenario.initial_position is off the flight grid");
        for (const auto& u : users) u.validate();
    }
};

namespace detail {

template <typename T>
T require_field(const nlohmann::json& j, const std::string& path, const char* key) {
    if (!j.contains(key))
        throw UsageError("missing required field: " + path + key);
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw UsageError("malformed field: " + path + key);
    }
}

template <typename T>
T optional_field(const nlohmann::json& j, const char* key, T fallback) {
    if (!j.contains(key)) return fallback;
    return j.at(key).get<T>();
}

} // namespace detail

inline nlohmann::json to_json(const Scenario& s) {
    nlohmann::json j;
    j["schema_version"] = 1;
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
    j["T"] = s.num_slots;
    j["seed"] = s.seed;
    j["rician_k"] = s.rician_k;
    const Position q0 = s.map.position_of(s.initial_position);
    j["initial_position"] = {{"x_m", q0.x_m}, {"y_m", q0.y_m}, {"z_m", q0.z_m}};
    j["users"] = nlohmann::json::array();
    for (const auto& u : s.users) {
        j["users"].push_back({{"id", u.id},
                              {"x_m", u.position.x_m},
                              {"y_m", u.position.y_m},
                              {"start_slot", u.start_slot},
                              {"duration_slots", u.duration_slots},
                              {"qos_rate_bps", u.qos_rate_bps},
                              {"initial_data_bits", u.initial_data_bits}});
    }
    return j;
}

inline Scenario scenario_from_json(const nlohmann::json& j) {
    using detail::optional_field;
    using detail::require_field;
    Scenario s;
    const auto& jm = j.contains("map") ? j.at("map")
                                       : throw UsageError("missing required field: map");
    s.map.width_m = require_field<double>(jm, "map.", "width_m");
    s.map.grid_step_m = require_field<double>(jm, "map.", "grid_step_m");
    s.map.min_alt_m = require_field<double>(jm, "map.", "min_alt_m");
    s.map.max_alt_m = require_field<double>(jm, "map.", "max_alt_m");

    if (!j.contains("dynamics")) throw UsageError("missing required field: dynamics");
    const auto& jd = j.at("dynamics");
    s.dynamics.max_speed_mps = require_field<double>(jd, "dynamics.", "max_speed_mps");
    s.dynamics.slot_duration_s = require_field<double>(jd, "dynamics.", "slot_duration_s");

    if (!j.contains("channel")) throw UsageError("missing required field: channel");
    const auto& jc = j.at("channel");
    s.channel.env_a = require_field<double>(jc, "channel.", "env_a");
    s.channel.env_b = require_field<double>(jc, "channel.", "env_b");
    s.channel.excess_los_db = require_field<double>(jc, "channel.", "excess_los_db");
    s.channel.excess_nlos_db = require_field<double>(jc, "channel.", "excess_nlos_db");
    s.channel.carrier_hz = require_field<double>(jc, "channel.", "carrier_hz");
    s.channel.noise_psd_dbm_hz = require_field<double>(jc, "channel.", "noise_psd_dbm_hz");
    s.channel.bandwidth_hz = require_field<double>(jc, "channel.", "bandwidth_hz");
    s.channel.tx_power_dbm = require_field<double>(jc, "channel.", "tx_power_dbm");

    s.num_slots = require_field<int>(j, "", "T");
    s.seed = optional_field<std::uint64_t>(j, "seed", 0);
    s.rician_k = optional_field<double>(j, "rician_k", 12.0);

    if (!j.contains("initial_position"))
        throw UsageError("missing required field: initial_position");
    const auto& jq = j.at("initial_position");
    Position q0{require_field<double>(jq, "initial_position.", "x_m"),
                require_field<double>(jq, "initial_position.", "y_m"),
                require_field<double>(jq, "initial_position.", "z_m")};
    s.initial_position = s.map.snap(q0);

    if (!j.contains("users")) throw UsageError("missing required field: users");
    for (std::size_t n = 0; n < j.at("users").size(); ++n) {
        const auto& ju = j.at("users").at(n);
        const std::string path = "users[" + std::to_string(n) + "].";
        User u;
        u.id = require_field<int>(ju, path, "id");
        u.position.x_m = require_field<double>(ju, path, "x_m");
        u.position.y_m = require_field<double>(ju, path, "y_m");
        u.position.z_m = 0.0;
        u.start_slot = require_field<int>(ju, path, "start_slot");
        u.duration_slots = require_field<int>(ju, path, "duration_slots");
        u.qos_rate_bps = require_field<double>(ju, path, "qos_rate_bps");
        u.initial_data_bits = require_field<double>(ju, path, "initial_data_bits");
        s.users.push_back(u);
    }
    s.validate();
    return s;
}

inline Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open scenario file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw UsageError("scenario file " + path + " is not valid JSON: " + e.what());
    }
    return scenario_from_json(j);
}

inline void save_scenario(const Scenario& s, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw UsageError("cannot write scenario file: " + path);
    out << to_json(s).dump(2) << '\n';
}

} // namespace uavpf
