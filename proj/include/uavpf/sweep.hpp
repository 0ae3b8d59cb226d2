#pragma once

#include <atomic>
#include <cmath>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "uavpf/episode.hpp"
#include "uavpf/scenario_gen.hpp"

namespace uavpf {

enum class SweepAxis { qos_rate, user_count, bandwidth, planner };

inline const char* to_string(SweepAxis a) {
    switch (a) {
        case SweepAxis::qos_rate: return "qos_rate_bps";
        case SweepAxis::user_count: return "user_count";
        case SweepAxis::bandwidth: return "bandwidth_hz";
        case SweepAxis::planner: return "planner";
    }
    return "?";
}

inline SweepAxis sweep_axis_from_string(const std::string& s) {
    if (s == "qos_rate_bps") return SweepAxis::qos_rate;
    if (s == "user_count") return SweepAxis::user_count;
    if (s == "bandwidth_hz") return SweepAxis::bandwidth;
    if (s == "planner") return SweepAxis::planner;
    throw UsageError("unknown sweep axis: " + s);
}

struct SweepSpec {
    ScenarioSpec base;
    SweepAxis axis = SweepAxis::planner;
    std::vector<double> values; // ignored for the planner axis
    std::vector<PlannerConfig> planners;
    int n_seeds = 20;
    std::uint64_t seed0 = 1;
    bool keep_episodes = true; // retain full EpisodeResults (for persistence)
};

struct EpisodeRow {
    double axis_value = 0.0;
    std::string planner;
    std::uint64_t seed = 0;
    double total_pf = 0.0;
    double pct_served = 0.0;
    double wall_clock_s = 0.0;
    std::string status = "ok";
};

struct SweepPoint {
    double axis_value = 0.0;
    std::string planner;
    double mean_pf = 0.0, stddev_pf = 0.0;
    double mean_pct_served = 0.0, stddev_pct_served = 0.0;
    int count = 0;
};

struct SweepResult {
    SweepAxis axis = SweepAxis::planner;
    std::vector<EpisodeRow> rows;        // ordered by (value, planner, seed)
    std::vector<SweepPoint> aggregates;  // mean/stddev over ok rows
    std::vector<EpisodeResult> episodes; // parallel to rows when kept
    int failures = 0;
};

namespace detail {

inline ScenarioSpec apply_axis(const ScenarioSpec& base, SweepAxis axis, double value) {
    ScenarioSpec s = base;
    switch (axis) {
        case SweepAxis::qos_rate: s.qos_rate_bps = value; break;
        case SweepAxis::user_count: s.user_count = static_cast<int>(std::llround(value)); break;
        case SweepAxis::bandwidth: s.channel.bandwidth_hz = value; break;
        case SweepAxis::planner: break;
    }
    return s;
}

} // namespace detail

// Planner seed for a given scenario seed: derived, so planner streams are
// independent of the scenario stream and of each other.
inline std::uint64_t planner_seed_for(std::uint64_t scenario_seed, const std::string& name) {
    return SplitMix64(scenario_seed).child("planner:" + name).next_u64();
}

// Mean/stddev per (axis value, planner) over ok rows, in first-seen order.
inline std::vector<SweepPoint> aggregate_rows(const std::vector<EpisodeRow>& rows,
                                              int* failures = nullptr) {
    std::map<std::pair<double, std::string>, SweepPoint> agg;
    std::vector<std::pair<double, std::string>> key_order;
    int failed = 0;
    for (const EpisodeRow& row : rows) {
        const auto key = std::make_pair(row.axis_value, row.planner);
        if (!agg.count(key)) {
            key_order.push_back(key);
            agg[key].axis_value = row.axis_value;
            agg[key].planner = row.planner;
        }
        if (row.status != "ok") {
            ++failed;
            continue;
        }
        SweepPoint& p = agg[key];
        ++p.count;
        p.mean_pf += row.total_pf;
        p.stddev_pf += row.total_pf * row.total_pf;
        p.mean_pct_served += row.pct_served;
        p.stddev_pct_served += row.pct_served * row.pct_served;
    }
    std::vector<SweepPoint> out;
    for (const auto& key : key_order) {
        SweepPoint p = agg[key];
        if (p.count > 0) {
            p.mean_pf /= p.count;
            p.mean_pct_served /= p.count;
            const double var_pf = std::max(0.0, p.stddev_pf / p.count - p.mean_pf * p.mean_pf);
            const double var_sv = std::max(
                0.0, p.stddev_pct_served / p.count - p.mean_pct_served * p.mean_pct_served);
            p.stddev_pf = std::sqrt(var_pf);
            p.stddev_pct_served = std::sqrt(var_sv);
        }
        out.push_back(p);
    }
    if (failures) *failures = failed;
    return out;
}

/**
 * Cartesian experiment grid: axis values x planners x seeds. Episodes run
 * embarrassingly parallel over `jobs` workers; every task writes into its
 * preassigned slot, so results are identical for any worker count. A
 * failing episode becomes a status != ok row and the sweep continues.
 */
inline SweepResult sweep(const SweepSpec& spec, int jobs = 1) {
    if (spec.n_seeds < 1) throw UsageError("sweep.n_seeds must be >= 1");
    if (spec.planners.empty()) throw UsageError("sweep needs at least one planner");
    SweepResult result;
    result.axis = spec.axis;

    const std::vector<double> values =
        spec.axis == SweepAxis::planner || spec.values.empty() ? std::vector<double>{0.0}
                                                               : spec.values;

    struct Task {
        double axis_value;
        ScenarioSpec scenario_spec;
        PlannerConfig planner;
        std::string planner_name;
    };
    std::vector<Task> tasks;
    for (double v : values) {
        const ScenarioSpec with_axis = detail::apply_axis(spec.base, spec.axis, v);
        for (const PlannerConfig& pc : spec.planners) {
            for (int s = 0; s < spec.n_seeds; ++s) {
                Task t;
                t.axis_value = v;
                t.scenario_spec = with_axis.with_seed(spec.seed0 + static_cast<std::uint64_t>(s));
                t.planner = pc;
                t.planner_name = pc.name();
                tasks.push_back(std::move(t));
            }
        }
    }

    result.rows.resize(tasks.size());
    result.episodes.resize(spec.keep_episodes ? tasks.size() : 0);

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        while (true) {
            const std::size_t idx = next.fetch_add(1);
            if (idx >= tasks.size()) return;
            const Task& t = tasks[idx];
            EpisodeRow& row = result.rows[idx];
            row.axis_value = t.axis_value;
            row.planner = t.planner_name;
            row.seed = t.scenario_spec.seed;
            try {
                const Scenario sc = generate_scenario(t.scenario_spec);
                PlannerConfig pc = t.planner;
                pc.rng_seed = planner_seed_for(sc.seed, t.planner_name);
                EpisodeResult ep = run_episode(sc, pc);
                row.total_pf = ep.total_pf;
                row.pct_served = ep.pct_served;
                row.wall_clock_s = ep.wall_clock_s;
                row.status = "ok";
                if (spec.keep_episodes) result.episodes[idx] = std::move(ep);
            } catch (const std::exception& e) {
                row.status = std::string("error: ") + e.what();
            }
        }
    };

    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(jobs));
        for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    result.aggregates = aggregate_rows(result.rows, &result.failures);
    return result;
}

struct ComparisonRow {
    double axis_value = 0.0;
    std::string planner_a, planner_b;
    double mean_diff = 0.0; // mean of (a - b) over paired seeds
    int positive = 0;       // seeds with a > b
    int negative = 0;       // seeds with a < b
    int pairs = 0;
};

/**
 * Paired planner comparison within a sweep (episodes share scenario seeds).
 * Throws PairingError when the two planners did not run the same seeds at
 * some axis point.
 */
inline std::vector<ComparisonRow> compare_report(const SweepResult& res,
                                                 const std::string& planner_a,
                                                 const std::string& planner_b) {
    std::map<double, std::map<std::uint64_t, double>> a_rows, b_rows;
    for (const EpisodeRow& row : res.rows) {
        if (row.status != "ok") continue;
        if (row.planner == planner_a) a_rows[row.axis_value][row.seed] = row.total_pf;
        if (row.planner == planner_b) b_rows[row.axis_value][row.seed] = row.total_pf;
    }
    std::vector<ComparisonRow> out;
    for (const auto& [value, by_seed_a] : a_rows) {
        if (!b_rows.count(value))
            throw PairingError("compare_report: axis point missing for " + planner_b);
        const auto& by_seed_b = b_rows.at(value);
        ComparisonRow row;
        row.axis_value = value;
        row.planner_a = planner_a;
        row.planner_b = planner_b;
        for (const auto& [seed, pf_a] : by_seed_a) {
            const auto it = by_seed_b.find(seed);
            if (it == by_seed_b.end())
                throw PairingError("compare_report: seed " + std::to_string(seed) +
                                   " missing for " + planner_b);
            const double diff = pf_a - it->second;
            row.mean_diff += diff;
            if (diff > 0) ++row.positive;
            if (diff < 0) ++row.negative;
            ++row.pairs;
        }
        if (row.pairs > 0) row.mean_diff /= row.pairs;
        out.push_back(row);
    }
    return out;
}

} // namespace uavpf
