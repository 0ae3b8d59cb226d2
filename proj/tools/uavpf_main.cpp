// Command-line front end: single episodes, experiment sweeps, oracle
// comparison checks and plot-data export.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "uavpf/oracles.hpp"
#include "uavpf/uavpf.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct OracleCheckOptions {
    std::string suite = "all";
    std::vector<int> users = {5, 10};
    int snapshots = 0; // 0: 50 for 5 users, 25 for more
    std::uint64_t seed = 1;
};

// Regularized-reward table of the per-slot solvers against the exhaustive
// subset oracle, plus planner dominance on tiny instances. Returns the
// number of violated bands.
int run_oracle_check(const OracleCheckOptions& opt) {
    int violations = 0;

    if (opt.suite == "rrm" || opt.suite == "all") {
        std::printf("per-slot solver, regularized by the exhaustive subset x grid oracle\n");
        std::printf("(joint = stronger joint bandwidth/power refinement, informational)\n");
        std::printf("%6s %10s %12s %12s %12s %12s\n", "users", "snapshots", "solver-min",
                    "solver-mean", "maxsinr-mean", "joint-mean");
        for (int users : opt.users) {
            const int n = opt.snapshots > 0 ? opt.snapshots : (users <= 5 ? 50 : 25);
            uavpf::oracle::SnapshotInstanceSpec spec;
            spec.user_count = users;
            spec.base.channel.bandwidth_hz = 5e6;
            double min_ratio = 1.0, mean_ratio = 0.0, mean_sinr = 0.0, mean_joint = 0.0;
            int counted = 0;
            for (int k = 0; k < n; ++k) {
                const uavpf::Snapshot snap = uavpf::oracle::random_snapshot(
                    spec, opt.seed + static_cast<std::uint64_t>(k));
                const auto ref = uavpf::oracle::snapshot_grid_alternation_oracle(snap);
                if (ref.best_value <= 0.0) continue;
                const double solver = uavpf::rrm_evaluate(snap).slot_reward;
                const double sinr = uavpf::max_sinr_rrm(snap).slot_reward;
                min_ratio = std::min(min_ratio, solver / ref.best_value);
                mean_ratio += solver / ref.best_value;
                mean_sinr += sinr / ref.best_value;
                mean_joint += solver / uavpf::oracle::snapshot_oracle(snap).best_value;
                ++counted;
            }
            if (counted == 0) continue;
            mean_ratio /= counted;
            mean_sinr /= counted;
            mean_joint /= counted;
            std::printf("%6d %10d %12.4f %12.4f %12.4f %12.4f\n", users, counted, min_ratio,
                        mean_ratio, mean_sinr, mean_joint);
            if (users == 5 && min_ratio < 0.995) ++violations;
            if (users == 5 && mean_sinr > 0.80) ++violations;
            if (users == 10 && mean_sinr > 0.70) ++violations;
        }
    }

    if (opt.suite == "convergence") {
        // normalized value of the alternation after the initial association
        // and after 5 and 10 rounds, averaged over 20-user snapshots
        uavpf::oracle::SnapshotInstanceSpec spec;
        spec.user_count = 20;
        spec.base.channel.bandwidth_hz = 2e6;
        const int n = opt.snapshots > 0 ? opt.snapshots : 20;
        double r0 = 0.0, r5 = 0.0, r10 = 0.0;
        int counted = 0;
        for (int k = 0; k < n; ++k) {
            const uavpf::Snapshot snap =
                uavpf::oracle::random_snapshot(spec, opt.seed + static_cast<std::uint64_t>(k));
            std::vector<double> trace;
            const double final_reward = uavpf::rrm_evaluate(snap, &trace).slot_reward;
            if (final_reward <= 0.0) continue;
            auto at = [&](std::size_t k_round) {
                return trace[std::min(k_round, trace.size() - 1)] / final_reward;
            };
            r0 += at(0);
            r5 += at(5);
            r10 += at(10);
            ++counted;
        }
        if (counted > 0)
            std::printf("alternation profile over %d snapshots: %.2f%% -> %.2f%% -> %.2f%% "
                        "(after association / 5 / 10 rounds)\n",
                        counted, 100.0 * r0 / counted, 100.0 * r5 / counted,
                        100.0 * r10 / counted);
    }

    if (opt.suite == "planners" || opt.suite == "all") {
        std::printf("planner dominance on tiny instances\n");
        uavpf::ScenarioSpec tiny;
        tiny.map = uavpf::GridMap{80.0, 40.0, 40.0, 80.0};
        tiny.user_count = 3;
        tiny.num_slots = 3;
        tiny.qos_rate_bps = 1.0e6;
        tiny.initial_position = uavpf::Position{40.0, 40.0, 80.0};
        const int seeds = 20;
        int dominated = 0, exact = 0;
        for (int s = 0; s < seeds; ++s) {
            const uavpf::Scenario sc =
                uavpf::generate_scenario(tiny.with_seed(opt.seed + static_cast<std::uint64_t>(s)));
            const uavpf::Trajectory best = uavpf::exhaustive_plan(sc);
            const uavpf::Trajectory dfs_full = uavpf::dfs_plan(sc, sc.num_slots);
            uavpf::PlannerConfig ga;
            ga.kind = uavpf::PlannerKind::ga_tp;
            ga.ga = uavpf::GaParams{40, 12, 3, 0.2};
            ga.rng_seed = sc.seed;
            const double ga_pf = uavpf::ga_tp_plan(sc, ga).total_pf;
            const double greedy_pf = uavpf::dfs_plan(sc, 1).total_pf;
            const double tol = 1e-9 * std::max(1.0, best.total_pf);
            if (dfs_full.total_pf >= best.total_pf - tol &&
                dfs_full.total_pf <= best.total_pf + tol)
                ++exact;
            if (best.total_pf + tol >= ga_pf && best.total_pf + tol >= greedy_pf) ++dominated;
        }
        std::printf("  exhaustive >= {greedy, genetic}: %d/%d seeds\n", dominated, seeds);
        std::printf("  full-depth search == exhaustive: %d/%d seeds\n", exact, seeds);
        if (dominated != seeds) ++violations;
        if (exact != seeds) ++violations;
    }

    if (violations > 0) std::printf("oracle-check: %d band violation(s)\n", violations);
    else std::printf("oracle-check: all bands hold\n");
    return violations;
}

json resolved_planner_json(const uavpf::PlannerConfig& cfg) { return uavpf::to_json(cfg); }

std::vector<uavpf::EpisodeRow> read_summary_csv(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw uavpf::UsageError("cannot open " + path.string());
    std::vector<uavpf::EpisodeRow> rows;
    std::string line;
    std::getline(in, line); // header
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string field;
        uavpf::EpisodeRow row;
        std::getline(ss, field, ',');
        row.axis_value = std::stod(field);
        std::getline(ss, row.planner, ',');
        std::getline(ss, field, ',');
        row.seed = std::stoull(field);
        std::getline(ss, field, ',');
        row.total_pf = std::stod(field);
        std::getline(ss, field, ',');
        row.pct_served = std::stod(field);
        std::getline(ss, field, ',');
        row.wall_clock_s = std::stod(field);
        std::getline(ss, row.status, ',');
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"trajectory + radio-resource simulator for an aerial base station"};
    app.set_version_flag("--version", std::string("uavpf ") + uavpf::version_string);
    app.require_subcommand(1);

    // ---- simulate ----
    auto* sim = app.add_subcommand("simulate", "run one episode on a scenario file");
    std::string sim_scenario, sim_planner = "dfs", sim_out = "uavpf_out/simulate";
    int sim_depth = 5;
    std::uint64_t sim_seed = 0;
    bool sim_seed_set = false, sim_paper_scale = false;
    double sim_angle = 0.0;
    bool sim_angle_set = false;
    sim->add_option("--scenario", sim_scenario, "scenario JSON file")->required();
    sim->add_option("--planner", sim_planner,
                    "planner kind: dfs | ga-tp | ga-iter | circular | fixed | exhaustive");
    sim->add_option("--depth", sim_depth, "tree-search depth for the dfs planner");
    sim->add_option("--seed", sim_seed, "planner random seed (default: derived from scenario)")
        ->each([&](const std::string&) { sim_seed_set = true; });
    sim->add_option("--angle", sim_angle, "starting phase of the circular baseline, radians")
        ->each([&](const std::string&) { sim_angle_set = true; });
    sim->add_flag("--paper-scale", sim_paper_scale,
                  "full-scale genetic search (10000 generations x 50)");
    sim->add_option("--out", sim_out, "output directory");

    // ---- sweep ----
    auto* sw = app.add_subcommand("sweep", "run an experiment grid from a sweep spec file");
    std::string sw_spec, sw_out = "uavpf_out/sweep";
    int sw_jobs = 1, sw_seeds = 0;
    std::uint64_t sw_seed0 = 0;
    bool sw_seed0_set = false, sw_paper_scale = false;
    sw->add_option("--spec", sw_spec, "sweep spec JSON file")->required();
    sw->add_option("--jobs", sw_jobs, "worker threads (results are identical for any value)");
    sw->add_option("--seeds", sw_seeds, "override the spec's number of seeds");
    sw->add_option("--seed0", sw_seed0, "override the spec's first seed")
        ->each([&](const std::string&) { sw_seed0_set = true; });
    sw->add_flag("--paper-scale", sw_paper_scale, "full-scale genetic search for GA planners");
    sw->add_option("--out", sw_out, "output directory");

    // ---- oracle-check ----
    auto* oc = app.add_subcommand("oracle-check",
                                  "compare the solvers against brute-force reference optima");
    OracleCheckOptions oc_opt;
    oc->add_option("--suite", oc_opt.suite, "rrm | planners | convergence | all");
    oc->add_option("--users", oc_opt.users, "user counts for the per-slot comparison");
    oc->add_option("--snapshots", oc_opt.snapshots, "snapshots per user count (0 = default)");
    oc->add_option("--seed", oc_opt.seed, "first instance seed");

    // ---- export-plots ----
    auto* ex = app.add_subcommand("export-plots", "turn a sweep's summary.csv into plot data");
    std::string ex_in, ex_out;
    ex->add_option("--in", ex_in, "sweep output directory")->required();
    ex->add_option("--out", ex_out, "plot data file (default: <in>/plot.json)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*sim) {
            const uavpf::Scenario sc = uavpf::load_scenario(sim_scenario);
            uavpf::PlannerConfig cfg;
            cfg.kind = uavpf::planner_kind_from_string(sim_planner);
            cfg.dfs_depth = sim_depth;
            cfg.paper_scale = sim_paper_scale;
            cfg.rng_seed = sim_seed_set ? sim_seed
                                        : uavpf::planner_seed_for(sc.seed, cfg.name());
            if (sim_angle_set) cfg.circular_angle_rad = sim_angle;
            cfg.validate();

            json manifest_cfg;
            manifest_cfg["scenario_file"] = sim_scenario;
            manifest_cfg["scenario"] = uavpf::to_json(sc);
            manifest_cfg["planner"] = resolved_planner_json(cfg);
            uavpf::write_manifest(sim_out, "simulate", manifest_cfg, 1);

            const uavpf::EpisodeResult ep = uavpf::run_episode(sc, cfg);
            std::ofstream out(fs::path(sim_out) / "episode.json");
            out << uavpf::episode_to_json(ep).dump(2) << '\n';
            std::printf("%s: total_pf=%.6f nats, served %.1f%%, %.3f s\n", ep.planner.c_str(),
                        ep.total_pf, 100.0 * ep.pct_served, ep.wall_clock_s);
            return 0;
        }

        if (*sw) {
            uavpf::SweepSpec spec = uavpf::load_sweep_spec(sw_spec);
            if (sw_seeds > 0) spec.n_seeds = sw_seeds;
            if (sw_seed0_set) spec.seed0 = sw_seed0;
            if (sw_paper_scale)
                for (auto& pc : spec.planners) pc.paper_scale = true;

            json manifest_cfg;
            manifest_cfg["spec_file"] = sw_spec;
            manifest_cfg["axis"] = uavpf::to_string(spec.axis);
            manifest_cfg["values"] = spec.values;
            manifest_cfg["n_seeds"] = spec.n_seeds;
            manifest_cfg["seed0"] = spec.seed0;
            manifest_cfg["base"] = uavpf::to_json(spec.base);
            manifest_cfg["planners"] = json::array();
            for (const auto& pc : spec.planners)
                manifest_cfg["planners"].push_back(resolved_planner_json(pc));
            uavpf::write_manifest(sw_out, "sweep", manifest_cfg, sw_jobs);

            const uavpf::SweepResult res = uavpf::sweep(spec, sw_jobs);
            uavpf::write_sweep_outputs(res, sw_out);
            uavpf::write_plot_data(res, fs::path(sw_out) / "plot.json");
            for (const auto& p : res.aggregates)
                std::printf("%-12s axis=%-12g pf=%8.3f +- %6.3f  served=%5.1f%%  (n=%d)\n",
                            p.planner.c_str(), p.axis_value, p.mean_pf, p.stddev_pf,
                            100.0 * p.mean_pct_served, p.count);
            if (res.failures > 0)
                std::printf("failed episodes: %d of %zu\n", res.failures, res.rows.size());
            return 0;
        }

        if (*oc) {
            return run_oracle_check(oc_opt) > 0 ? 4 : 0;
        }

        if (*ex) {
            const fs::path in_dir = ex_in;
            const std::vector<uavpf::EpisodeRow> rows = read_summary_csv(in_dir / "summary.csv");
            uavpf::SweepResult res;
            res.rows = rows;
            res.aggregates = uavpf::aggregate_rows(rows);
            // axis label from the manifest, when present
            res.axis = uavpf::SweepAxis::planner;
            const fs::path mf = in_dir / "manifest.json";
            if (fs::exists(mf)) {
                std::ifstream m(mf);
                json jm;
                m >> jm;
                if (jm.contains("config") && jm["config"].contains("axis"))
                    res.axis = uavpf::sweep_axis_from_string(jm["config"]["axis"]);
            }
            uavpf::write_plot_data(res, ex_out.empty() ? in_dir / "plot.json" : fs::path(ex_out));
            return 0;
        }
    } catch (const uavpf::UsageError& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return 1;
    } catch (const uavpf::InfeasibleError& e) {
        std::fprintf(stderr, "infeasible instance: %s\n", e.what());
        return 2;
    } catch (const uavpf::SizeGuardError& e) {
        std::fprintf(stderr, "instance too large: %s\n", e.what());
        return 2;
    } catch (const uavpf::NonConvergenceError& e) {
        std::fprintf(stderr, "solver did not converge: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
