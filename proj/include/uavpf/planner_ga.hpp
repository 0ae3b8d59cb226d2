#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "uavpf/rng.hpp"
#include "uavpf/trajectory.hpp"

namespace uavpf {

namespace detail {

// A gene is one move index per slot, stored position-independently as a
// 32-bit fraction: at decode time slot t's move is
// moves[gene[t] * |moves| >> 32] of the reachable set of the previous
// position. Any crossover point therefore yields a feasible trajectory.
using Gene = std::vector<std::uint32_t>;

inline std::size_t decode_index(std::uint32_t g, std::size_t n) {
    return static_cast<std::size_t>((static_cast<std::uint64_t>(g) * n) >> 32);
}

// Gene value whose decoded index is idx for a reachable set of size n
// (midpoint of the preimage interval).
inline std::uint32_t encode_index(std::size_t idx, std::size_t n) {
    const double lo = static_cast<double>(idx) / static_cast<double>(n);
    const double hi = static_cast<double>(idx + 1) / static_cast<double>(n);
    return static_cast<std::uint32_t>(0.5 * (lo + hi) * 4294967296.0);
}

inline std::vector<GridPoint> decode_gene(const Scenario& sc, const Gene& gene) {
    std::vector<GridPoint> positions;
    positions.reserve(gene.size());
    GridPoint q = sc.initial_position;
    for (std::uint32_t g : gene) {
        const std::vector<GridPoint> moves = reachable_set(sc.map, sc.dynamics, q);
        q = moves[decode_index(g, moves.size())];
        positions.push_back(q);
    }
    return positions;
}

inline Gene encode_positions(const Scenario& sc, const std::vector<GridPoint>& positions) {
    Gene gene;
    gene.reserve(positions.size());
    GridPoint q = sc.initial_position;
    for (const GridPoint& next : positions) {
        const std::vector<GridPoint> moves = reachable_set(sc.map, sc.dynamics, q);
        const auto it = std::lower_bound(moves.begin(), moves.end(), next);
        gene.push_back(encode_index(static_cast<std::size_t>(it - moves.begin()), moves.size()));
        q = next;
    }
    return gene;
}

inline Gene random_gene(SplitMix64& rng, int length) {
    Gene g(static_cast<std::size_t>(length));
    for (auto& v : g) v = static_cast<std::uint32_t>(rng.next_u64() >> 32);
    return g;
}

/**
 * Elitist genetic search over genes of fixed length. Fitness is supplied by
 * the caller; higher is better. Selection is a size-3 tournament, crossover
 * is single-point, and a mutation event resamples one move. Returns the best
 * gene ever evaluated; its fitness trail is non-decreasing by elitism.
 */
template <typename FitnessFn>
std::pair<Gene, double> genetic_search(SplitMix64& rng, const GaParams& params, int gene_length,
                                       FitnessFn&& fitness,
                                       const std::vector<Gene>& seeds = {}) {
    struct Member {
        Gene gene;
        double fitness;
    };
    const std::size_t pop_size = static_cast<std::size_t>(params.population);
    std::vector<Member> pop;
    pop.reserve(pop_size);
    for (const Gene& s : seeds) {
        if (pop.size() == pop_size) break;
        pop.push_back({s, fitness(s)});
    }
    while (pop.size() < pop_size) {
        Gene g = random_gene(rng, gene_length);
        double f = fitness(g);
        pop.push_back({std::move(g), f});
    }

    auto by_fitness = [&](std::vector<std::size_t>& order) {
        order.resize(pop.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return pop[a].fitness > pop[b].fitness;
        });
    };

    std::vector<std::size_t> order;
    by_fitness(order);
    Gene best_gene = pop[order[0]].gene;
    double best_fitness = pop[order[0]].fitness;

    auto tournament = [&]() -> const Member& {
        const Member* winner = &pop[rng.uniform_index(pop.size())];
        for (int k = 1; k < 3; ++k) {
            const Member& m = pop[rng.uniform_index(pop.size())];
            if (m.fitness > winner->fitness) winner = &m;
        }
        return *winner;
    };

    for (int gen = 0; gen < params.generations; ++gen) {
        std::vector<Member> next;
        next.reserve(pop_size);
        for (int e = 0; e < params.elites; ++e) next.push_back(pop[order[static_cast<std::size_t>(e)]]);
        while (next.size() < pop_size) {
            const Gene& a = tournament().gene;
            const Gene& b = tournament().gene;
            Gene child(a.size());
            const std::size_t cut = rng.uniform_index(a.size() + 1);
            std::copy(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(cut), child.begin());
            std::copy(b.begin() + static_cast<std::ptrdiff_t>(cut), b.end(),
                      child.begin() + static_cast<std::ptrdiff_t>(cut));
            if (rng.next_double() < params.mutation_prob)
                child[rng.uniform_index(child.size())] =
                    static_cast<std::uint32_t>(rng.next_u64() >> 32);
            double f = fitness(child);
            next.push_back({std::move(child), f});
        }
        pop = std::move(next);
        by_fitness(order);
        if (pop[order[0]].fitness > best_fitness) {
            best_fitness = pop[order[0]].fitness;
            best_gene = pop[order[0]].gene;
        }
    }
    return {std::move(best_gene), best_fitness};
}

} // namespace detail

/**
 * Whole-trajectory genetic planner: a gene is a full move sequence and its
 * fitness is the accumulated fairness value with the radio resources
 * re-optimized per slot for that particular trajectory.
 */
inline Trajectory ga_tp_plan(const Scenario& sc, const PlannerConfig& cfg) {
    cfg.validate();
    const SlotEvaluator eval(sc);
    SplitMix64 rng = SplitMix64(cfg.rng_seed).child("ga-tp");
    auto fitness = [&](const detail::Gene& g) {
        return replay_with_rrm(eval, detail::decode_gene(sc, g)).total_pf;
    };
    const auto searched =
        detail::genetic_search(rng, cfg.effective_ga(), sc.num_slots, fitness);
    return replay_with_rrm(eval, detail::decode_gene(sc, searched.first));
}

/**
 * Conventional alternating baseline. Starting from a random feasible
 * trajectory it repeats two phases: (a) re-optimize the radio resources for
 * the frozen trajectory; (b) genetic search over trajectories under the
 * frozen radio variables, scoring a candidate position sequence with the
 * stored association/bandwidth/PSD re-applied at the new positions (users
 * whose stored allocation misses their rate floor at the new position are
 * dropped from that slot's score, which keeps the frozen score a lower
 * bound of the re-optimized one). The loop accepts a candidate only when
 * the re-optimized fairness value improves, and stops after 10 rounds or on
 * the first non-improvement.
 */
inline Trajectory ga_iter_plan(const Scenario& sc, const PlannerConfig& cfg,
                               const std::vector<GridPoint>* initial = nullptr) {
    cfg.validate();
    const SlotEvaluator eval(sc);
    SplitMix64 seed_rng = SplitMix64(cfg.rng_seed).child("ga-iter-init");
    SplitMix64 ga_rng = SplitMix64(cfg.rng_seed).child("ga-iter");

    // starting trajectory: uniform random feasible move at every step
    std::vector<GridPoint> positions;
    if (initial) {
        positions = *initial;
    } else {
        GridPoint q = sc.initial_position;
        for (int t = 0; t < sc.num_slots; ++t) {
            const std::vector<GridPoint> moves = reachable_set(sc.map, sc.dynamics, q);
            q = moves[seed_rng.uniform_index(moves.size())];
            positions.push_back(q);
        }
    }
    Trajectory best = replay_with_rrm(eval, positions);

    for (int round = 0; round < 10; ++round) {
        // frozen radio variables of the incumbent trajectory
        const std::vector<RrmSolution>& frozen = best.solutions;
        auto frozen_fitness = [&](const detail::Gene& g) {
            const std::vector<GridPoint> pos = detail::decode_gene(sc, g);
            std::vector<double> bits;
            bits.reserve(sc.users.size());
            for (const auto& u : sc.users) bits.push_back(u.initial_data_bits);
            double total = 0.0;
            for (int t = 0; t < sc.num_slots; ++t) {
                const std::vector<double>& gains = eval.gains(pos[static_cast<std::size_t>(t)]);
                const RrmSolution& sol = frozen[static_cast<std::size_t>(t)];
                for (int idx : sol.association) {
                    const auto i = static_cast<std::size_t>(idx);
                    const double rate =
                        sol.bandwidth_hz[i] * spectral_efficiency(sol.psd_w_hz[i], gains[i]);
                    if (rate < sc.users[i].qos_rate_bps) continue;
                    total += std::log1p(rate * sc.dynamics.slot_duration_s / bits[i]);
                    bits[i] += rate * sc.dynamics.slot_duration_s;
                }
            }
            return total;
        };
        const auto searched =
            detail::genetic_search(ga_rng, cfg.effective_ga(), sc.num_slots, frozen_fitness,
                                   {detail::encode_positions(sc, best.positions)});
        Trajectory candidate = replay_with_rrm(eval, detail::decode_gene(sc, searched.first));
        if (candidate.total_pf > best.total_pf + 1e-12)
            best = std::move(candidate);
        else
            break;
    }
    return best;
}

} // namespace uavpf
