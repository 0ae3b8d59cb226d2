#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "uavpf/sweep.hpp"
#include "uavpf/version.hpp"

namespace uavpf {

inline nlohmann::json to_json(const PlannerConfig& cfg) {
    nlohmann::json j;
    j["kind"] = to_string(cfg.kind);
    if (cfg.kind == PlannerKind::dfs) j["depth"] = cfg.dfs_depth;
    if (cfg.kind == PlannerKind::ga_tp || cfg.kind == PlannerKind::ga_iter) {
        j["generations"] = cfg.ga.generations;
        j["population"] = cfg.ga.population;
        j["elites"] = cfg.ga.elites;
        j["mutation_prob"] = cfg.ga.mutation_prob;
        j["paper_scale"] = cfg.paper_scale;
    }
    if (cfg.kind == PlannerKind::circular && cfg.circular_angle_rad)
        j["angle_rad"] = *cfg.circular_angle_rad;
    j["seed"] = cfg.rng_seed;
    return j;
}

inline PlannerConfig planner_config_from_json(const nlohmann::json& j) {
    using detail::optional_field;
    PlannerConfig cfg;
    cfg.kind = planner_kind_from_string(detail::require_field<std::string>(j, "planner.", "kind"));
    cfg.dfs_depth = optional_field(j, "depth", cfg.dfs_depth);
    cfg.ga.generations = optional_field(j, "generations", cfg.ga.generations);
    cfg.ga.population = optional_field(j, "population", cfg.ga.population);
    cfg.ga.elites = optional_field(j, "elites", cfg.ga.elites);
    cfg.ga.mutation_prob = optional_field(j, "mutation_prob", cfg.ga.mutation_prob);
    cfg.paper_scale = optional_field(j, "paper_scale", cfg.paper_scale);
    if (j.contains("angle_rad")) cfg.circular_angle_rad = j.at("angle_rad").get<double>();
    cfg.rng_seed = optional_field<std::uint64_t>(j, "seed", cfg.rng_seed);
    cfg.validate();
    return cfg;
}

inline SweepSpec sweep_spec_from_json(const nlohmann::json& j) {
    using detail::optional_field;
    SweepSpec s;
    if (j.contains("base")) s.base = scenario_spec_from_json(j.at("base"));
    s.axis = sweep_axis_from_string(optional_field<std::string>(j, "axis", "planner"));
    if (j.contains("values")) s.values = j.at("values").get<std::vector<double>>();
    if (!j.contains("planners") || j.at("planners").empty())
        throw UsageError("missing required field: planners");
    for (const auto& jp : j.at("planners")) s.planners.push_back(planner_config_from_json(jp));
    s.n_seeds = optional_field(j, "n_seeds", s.n_seeds);
    s.seed0 = optional_field<std::uint64_t>(j, "seed0", s.seed0);
    return s;
}

inline SweepSpec load_sweep_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open sweep spec: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw UsageError("sweep spec " + path + " is not valid JSON: " + e.what());
    }
    return sweep_spec_from_json(j);
}

inline nlohmann::json episode_to_json(const EpisodeResult& ep) {
    nlohmann::json j;
    j["schema_version"] = schema_version;
    j["planner"] = ep.planner;
    j["seed"] = ep.scenario_seed;
    j["status"] = ep.status;
    j["total_pf_nats"] = ep.total_pf;
    j["pct_served"] = ep.pct_served;
    j["served_users"] = ep.served_users;
    j["wall_clock_s"] = ep.wall_clock_s;
    j["start_position"] = {ep.trajectory.start.i, ep.trajectory.start.j, ep.trajectory.start.k};
    nlohmann::json slots = nlohmann::json::array();
    for (std::size_t t = 0; t < ep.trajectory.positions.size(); ++t) {
        const GridPoint& q = ep.trajectory.positions[t];
        const RrmSolution& sol = ep.trajectory.solutions[t];
        slots.push_back({{"slot", t + 1},
                         {"position", {q.i, q.j, q.k}},
                         {"association", sol.association},
                         {"bandwidth_hz", sol.bandwidth_hz},
                         {"psd_w_hz", sol.psd_w_hz},
                         {"rate_bps", sol.rate_bps},
                         {"slot_reward", sol.slot_reward}});
    }
    j["slots"] = std::move(slots);
    return j;
}

namespace detail {

inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

} // namespace detail

/**
 * Per-episode result files plus the two CSVs of a sweep.
 *
 * summary.csv is byte-reproducible across reruns and worker counts, so its
 * wall_clock_s column is written as 0; measured timings go to timings.csv
 * and the per-episode JSON files, which are telemetry rather than results.
 */
inline void write_sweep_outputs(const SweepResult& res, const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    {
        std::ofstream csv(out_dir / "summary.csv", std::ios::binary);
        csv << "axis_value,planner,seed,total_pf_nats,pct_served,wall_clock_s,status\n";
        for (const EpisodeRow& r : res.rows)
            csv << detail::format_double(r.axis_value) << ',' << r.planner << ',' << r.seed << ','
                << detail::format_double(r.total_pf) << ',' << detail::format_double(r.pct_served)
                << ",0," << (r.status == "ok" ? "ok" : "error") << '\n';
    }
    {
        std::ofstream csv(out_dir / "timings.csv", std::ios::binary);
        csv << "axis_value,planner,seed,wall_clock_s\n";
        for (const EpisodeRow& r : res.rows)
            csv << detail::format_double(r.axis_value) << ',' << r.planner << ',' << r.seed << ','
                << detail::format_double(r.wall_clock_s) << '\n';
    }
    for (std::size_t idx = 0; idx < res.episodes.size(); ++idx) {
        const EpisodeRow& r = res.rows[idx];
        if (r.status != "ok") {
            nlohmann::json j;
            j["schema_version"] = schema_version;
            j["planner"] = r.planner;
            j["seed"] = r.seed;
            j["axis_value"] = r.axis_value;
            j["status"] = r.status;
            std::ofstream out(out_dir / ("episode_" + std::to_string(idx) + ".json"));
            out << j.dump(2) << '\n';
            continue;
        }
        nlohmann::json j = episode_to_json(res.episodes[idx]);
        j["axis_value"] = r.axis_value;
        std::ofstream out(out_dir / ("episode_" + std::to_string(idx) + ".json"));
        out << j.dump(2) << '\n';
    }
}

// Figure-style export: one series per planner with per-point mean/stddev,
// consumable by any plotting tool.
inline void write_plot_data(const SweepResult& res, const std::filesystem::path& path) {
    nlohmann::json j;
    j["schema_version"] = schema_version;
    j["axis"] = to_string(res.axis);
    std::vector<std::string> planner_order;
    std::map<std::string, nlohmann::json> series;
    for (const SweepPoint& p : res.aggregates) {
        if (!series.count(p.planner)) {
            planner_order.push_back(p.planner);
            series[p.planner] = {{"planner", p.planner},
                                 {"x", nlohmann::json::array()},
                                 {"mean_pf", nlohmann::json::array()},
                                 {"stddev_pf", nlohmann::json::array()},
                                 {"mean_pct_served", nlohmann::json::array()},
                                 {"stddev_pct_served", nlohmann::json::array()}};
        }
        nlohmann::json& sj = series[p.planner];
        sj["x"].push_back(p.axis_value);
        sj["mean_pf"].push_back(p.mean_pf);
        sj["stddev_pf"].push_back(p.stddev_pf);
        sj["mean_pct_served"].push_back(p.mean_pct_served);
        sj["stddev_pct_served"].push_back(p.stddev_pct_served);
    }
    j["series"] = nlohmann::json::array();
    for (const std::string& name : planner_order) j["series"].push_back(series[name]);
    std::filesystem::create_directories(path.parent_path().empty() ? "." : path.parent_path());
    std::ofstream out(path);
    out << j.dump(2) << '\n';
}

// Written before a run starts; re-running the same manifest reproduces the
// result files (wall-clock telemetry aside) byte for byte.
inline void write_manifest(const std::filesystem::path& out_dir, const std::string& command,
                           const nlohmann::json& resolved_config, int jobs) {
    std::filesystem::create_directories(out_dir);
    nlohmann::json j;
    j["schema_version"] = schema_version;
    j["tool"] = "uavpf";
    j["version"] = version_string;
    j["command"] = command;
    j["jobs"] = jobs;
    j["config"] = resolved_config;
    const auto now = std::chrono::system_clock::now();
    j["timestamp_unix"] =
        std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch()).count();
    j["out_dir"] = out_dir.string();
    std::ofstream out(out_dir / "manifest.json");
    out << j.dump(2) << '\n';
}

} // namespace uavpf
