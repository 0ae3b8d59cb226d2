#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "uavpf/errors.hpp"
#include "uavpf/rng.hpp"
#include "uavpf/scenario_gen.hpp"
#include "uavpf/snapshot.hpp"

// Reference solvers for the per-slot problem, written against the problem
// definitions only: exhaustive subset enumeration, grid searches and
// pairwise-exchange local search on the raw objective. Nothing here calls
// the production solvers; these exist to check them.
namespace uavpf::oracle {

// ---------------------------------------------------------------------------
// generic helpers
// ---------------------------------------------------------------------------

// Maximizes sum_i term(i, x_i) over the plane sum(x) = const with bounds
// x_i >= lb_i and an optional linear cap sum(cost_i * x_i) <= cap, by
// repeated two-coordinate transfers; each transfer amount is located with a
// refined 1-D grid. Exact for smooth concave separable objectives.
template <typename TermFn>
double pairwise_exchange_opt(std::vector<double>& x, const std::vector<double>& lb,
                             const std::vector<double>* cost, double cap, TermFn term,
                             int grid_points = 21, int zooms = 3, int max_rounds = 60) {
    const std::size_t n = x.size();
    std::vector<double> tv(n);
    double value = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        tv[i] = term(i, x[i]);
        value += tv[i];
    }
    if (n < 2) return value;

    double cost_used = 0.0;
    if (cost)
        for (std::size_t i = 0; i < n; ++i) cost_used += (*cost)[i] * x[i];

    for (int round = 0; round < max_rounds; ++round) {
        bool improved = false;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                // transfer d from j to i: x_i + d, x_j - d
                double d_lo = -(x[i] - lb[i]);
                double d_hi = x[j] - lb[j];
                if (cost) {
                    const double dc = (*cost)[i] - (*cost)[j];
                    const double slack = cap - cost_used;
                    if (dc > 0.0) d_hi = std::min(d_hi, slack / dc);
                    if (dc < 0.0) d_lo = std::max(d_lo, slack / dc);
                }
                if (d_hi <= d_lo) continue;
                const double base = tv[i] + tv[j];
                double best_d = 0.0, best_gain = 0.0;
                double lo = d_lo, hi = d_hi;
                for (int z = 0; z < zooms; ++z) {
                    const double step = (hi - lo) / (grid_points - 1);
                    for (int g = 0; g < grid_points; ++g) {
                        const double d = lo + step * g;
                        if (d < d_lo || d > d_hi) continue;
                        const double gain =
                            term(i, x[i] + d) + term(j, x[j] - d) - base;
                        if (gain > best_gain) {
                            best_gain = gain;
                            best_d = d;
                        }
                    }
                    lo = std::max(d_lo, best_d - step);
                    hi = std::min(d_hi, best_d + step);
                }
                if (best_gain > 1e-13 * std::max(1.0, std::abs(value))) {
                    x[i] += best_d;
                    x[j] -= best_d;
                    tv[i] = term(i, x[i]);
                    tv[j] = term(j, x[j]);
                    if (cost) cost_used += best_d * ((*cost)[i] - (*cost)[j]);
                    value += best_gain;
                    improved = true;
                }
            }
        }
        if (!improved) break;
    }
    value = 0.0;
    for (std::size_t i = 0; i < n; ++i) value += term(i, x[i]);
    return value;
}

// Recursive grid enumeration over { x : sum(x) = total, lb <= x }, with an
// optional feasibility filter, refined around the best point. Suitable for
// n <= 4.
class SimplexGridSearch {
public:
    using Objective = std::function<double(const std::vector<double>&)>;
    using Filter = std::function<bool(const std::vector<double>&)>;

    SimplexGridSearch(std::size_t n, double total, std::vector<double> lb)
        : n_(n), total_(total), lb_(std::move(lb)) {}

    // pts grid points per free dimension, then `zooms` refinements by 4x.
    double run(const Objective& objective, const Filter& filter, int pts, int zooms,
               std::vector<double>* argmax = nullptr) {
        std::vector<double> lo = lb_, hi(n_, total_);
        best_value_ = -std::numeric_limits<double>::infinity();
        for (int z = 0; z <= zooms; ++z) {
            std::vector<double> x(n_);
            enumerate(0, total_, lo, hi, pts, x, objective, filter);
            if (best_value_ == -std::numeric_limits<double>::infinity()) break;
            for (std::size_t i = 0; i < n_; ++i) {
                const double span = (hi[i] - lo[i]) / (pts - 1) * 2.0;
                lo[i] = std::max(lb_[i], best_x_[i] - span);
                hi[i] = best_x_[i] + span;
            }
        }
        if (argmax) *argmax = best_x_;
        return best_value_;
    }

private:
    void enumerate(std::size_t dim, double remaining, const std::vector<double>& lo,
                   const std::vector<double>& hi, int pts, std::vector<double>& x,
                   const Objective& objective, const Filter& filter) {
        if (dim + 1 == n_) {
            x[dim] = remaining;
            if (remaining < lb_[dim] - 1e-12) return;
            if (filter && !filter(x)) return;
            const double v = objective(x);
            if (v > best_value_) {
                best_value_ = v;
                best_x_ = x;
            }
            return;
        }
        double lb_rest = 0.0;
        for (std::size_t k = dim + 1; k < n_; ++k) lb_rest += lb_[k];
        const double from = lo[dim];
        const double to = std::min(hi[dim], remaining - lb_rest);
        if (to < from - 1e-12) return;
        const double step = pts > 1 ? (to - from) / (pts - 1) : 0.0;
        for (int g = 0; g < pts; ++g) {
            x[dim] = from + step * g;
            if (x[dim] > remaining - lb_rest + 1e-12) break;
            enumerate(dim + 1, remaining - x[dim], lo, hi, pts, x, objective, filter);
        }
    }

    std::size_t n_;
    double total_;
    std::vector<double> lb_;
    double best_value_ = 0.0;
    std::vector<double> best_x_;
};

// ---------------------------------------------------------------------------
// reference solvers for the individual sub-problems
// ---------------------------------------------------------------------------

// Brute-force grid search for the floored bandwidth split of <= 3 users:
// maximize sum ln(1 + w_i b_i) over sum(b) = budget, b >= floor. The grid
// step is budget / steps.
inline double waterfill_grid_oracle(const std::vector<double>& w, const std::vector<double>& fl,
                                    double budget, int steps, std::vector<double>* argmax) {
    const std::size_t n = w.size();
    double best = -std::numeric_limits<double>::infinity();
    std::vector<double> x(n), bx(n);
    const double h = budget / steps;
    if (n == 1) {
        x[0] = budget;
        best = std::log1p(w[0] * budget);
        bx = x;
    } else if (n == 2) {
        for (int a = 0; a <= steps; ++a) {
            x[0] = a * h;
            x[1] = budget - x[0];
            if (x[0] < fl[0] || x[1] < fl[1]) continue;
            const double v = std::log1p(w[0] * x[0]) + std::log1p(w[1] * x[1]);
            if (v > best) {
                best = v;
                bx = x;
            }
        }
    } else if (n == 3) {
        for (int a = 0; a <= steps; ++a) {
            x[0] = a * h;
            if (x[0] + fl[1] + fl[2] > budget) break;
            if (x[0] < fl[0]) continue;
            const double t0 = std::log1p(w[0] * x[0]);
            for (int b = 0; b <= steps - a; ++b) {
                x[1] = b * h;
                x[2] = budget - x[0] - x[1];
                if (x[1] < fl[1] || x[2] < fl[2] - 1e-12) continue;
                const double v = t0 + std::log1p(w[1] * x[1]) + std::log1p(w[2] * x[2]);
                if (v > best) {
                    best = v;
                    bx = x;
                }
            }
        }
    } else {
        throw SizeGuardError("waterfill_grid_oracle supports at most 3 users");
    }
    if (argmax) *argmax = bx;
    return best;
}

// Grid oracle for the bandwidth re-allocation problem with both budgets:
// maximize sum ln(1 + w_i b_i), sum(b) <= B, sum(rho_i b_i) <= P, b >= fl.
// The objective is increasing in every share, so at the optimum one of the
// two budgets is tight; both tight-budget slices are grid-searched.
inline double ra_grid_oracle(const std::vector<double>& w, const std::vector<double>& fl,
                             const std::vector<double>& rho, double budget_b, double budget_p,
                             int pts = 33, int zooms = 4) {
    const std::size_t n = w.size();
    auto objective = [&](const std::vector<double>& x) {
        double v = 0.0;
        for (std::size_t i = 0; i < n; ++i) v += std::log1p(w[i] * x[i]);
        return v;
    };
    double best = -std::numeric_limits<double>::infinity();
    { // bandwidth tight
        SimplexGridSearch grid(n, budget_b, fl);
        auto filter = [&](const std::vector<double>& x) {
            double p = 0.0;
            for (std::size_t i = 0; i < n; ++i) p += rho[i] * x[i];
            return p <= budget_p * (1.0 + 1e-9);
        };
        best = std::max(best, grid.run(objective, filter, pts, zooms));
    }
    { // power tight: grid over per-user power, b_i = p_i / rho_i
        std::vector<double> plb(n);
        for (std::size_t i = 0; i < n; ++i) plb[i] = fl[i] * rho[i];
        SimplexGridSearch grid(n, budget_p, plb);
        auto to_b = [&](const std::vector<double>& p, std::vector<double>& b) {
            for (std::size_t i = 0; i < n; ++i) b[i] = p[i] / rho[i];
        };
        std::vector<double> b(n);
        auto filter = [&](const std::vector<double>& p) {
            to_b(p, b);
            double s = 0.0;
            for (double v : b) s += v;
            return s <= budget_b * (1.0 + 1e-9);
        };
        auto obj_p = [&](const std::vector<double>& p) {
            to_b(p, b);
            return objective(b);
        };
        best = std::max(best, grid.run(obj_p, filter, pts, zooms));
    }
    return best;
}

// Grid oracle for the relaxed PSD problem: maximize
// sum tau_i * log2(1 + omega_i * rho_i) with sum(rho_i beta_i) = P and
// rho_i >= zeta_i, searched over per-user power p_i = rho_i * beta_i.
inline double pc_grid_oracle(const std::vector<double>& tau, const std::vector<double>& omega,
                             const std::vector<double>& beta, const std::vector<double>& zeta,
                             double budget_p, int pts = 41, int zooms = 4,
                             std::vector<double>* rho_out = nullptr) {
    const std::size_t n = tau.size();
    std::vector<double> plb(n);
    for (std::size_t i = 0; i < n; ++i) plb[i] = zeta[i] * beta[i];
    SimplexGridSearch grid(n, budget_p, plb);
    auto objective = [&](const std::vector<double>& p) {
        double v = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            v += tau[i] * std::log2(1.0 + omega[i] * p[i] / beta[i]);
        return v;
    };
    std::vector<double> best_p;
    const double v = grid.run(objective, nullptr, pts, zooms, &best_p);
    if (rho_out) {
        rho_out->resize(n);
        for (std::size_t i = 0; i < n; ++i) (*rho_out)[i] = best_p[i] / beta[i];
    }
    return v;
}

// ---------------------------------------------------------------------------
// full per-slot oracle: exhaustive subsets x alternating grid refinement
// ---------------------------------------------------------------------------

namespace detail {

// Least transmit power that can satisfy every rate floor of the subset when
// the whole bandwidth is split among it (power demand decreases with
// bandwidth, so the full budget is used). Convex separable, solved by
// pairwise exchange.
inline double min_power_needed(const Snapshot& snap, const std::vector<int>& subset,
                               std::vector<double>* beta_out = nullptr) {
    const std::size_t n = subset.size();
    bool any_floor = false;
    for (int idx : subset)
        if (snap.users[static_cast<std::size_t>(idx)].qos_rate_bps > 0.0) any_floor = true;
    if (!any_floor) {
        if (beta_out) beta_out->assign(n, snap.bandwidth_hz / static_cast<double>(n));
        return 0.0;
    }
    auto demand = [&](std::size_t m, double b) {
        const SnapshotUser& u = snap.users[static_cast<std::size_t>(subset[m])];
        if (u.qos_rate_bps <= 0.0) return 0.0;
        if (b <= 0.0) return std::numeric_limits<double>::infinity();
        return b * std::expm1(std::numbers::ln2 * u.qos_rate_bps / b) / u.gain_over_noise;
    };
    std::vector<double> b(n, snap.bandwidth_hz / static_cast<double>(n));
    std::vector<double> lb(n, snap.bandwidth_hz * 1e-9);
    const double neg = pairwise_exchange_opt(
        b, lb, nullptr, 0.0, [&](std::size_t m, double x) { return -demand(m, x); }, 25, 4);
    if (beta_out) *beta_out = b;
    return -neg;
}

} // namespace detail

struct SnapshotOracleResult {
    double best_value = 0.0;          // empty set scores 0
    std::vector<int> best_subset;
    int subsets_evaluated = 0;
};

/**
 * Reference optimum of the per-slot problem: enumerate every subset of the
 * active users, test feasibility with the least-power check, and for each
 * feasible subset maximize the raw fairness increment by alternating
 * pairwise-exchange grid searches over the bandwidth split (PSD fixed) and
 * the per-user power split (bandwidth fixed), from two starts. Guarded to
 * at most `max_users` candidate users.
 */
inline SnapshotOracleResult snapshot_oracle(const Snapshot& snap, int max_users = 12) {
    std::vector<int> candidates;
    for (std::size_t i = 0; i < snap.user_count(); ++i)
        if (snap.users[i].active && snap.users[i].gain_over_noise > 0.0)
            candidates.push_back(static_cast<int>(i));
    if (candidates.size() > static_cast<std::size_t>(max_users))
        throw SizeGuardError("snapshot_oracle: too many candidate users (" +
                             std::to_string(candidates.size()) + ")");

    SnapshotOracleResult result;
    const double dt = snap.slot_duration_s;

    auto evaluate_subset = [&](const std::vector<int>& subset) {
        const std::size_t n = subset.size();
        std::vector<double> beta_mp;
        const double need = detail::min_power_needed(snap, subset, &beta_mp);
        if (need > snap.power_w * (1.0 + 1e-9)) return -1.0; // infeasible
        const double spare = std::max(0.0, snap.power_w - need);

        auto run_from = [&](std::vector<double> beta, std::vector<double> power) {
            // alternate: bandwidth split for fixed PSD, power split for fixed bandwidth
            double value = -std::numeric_limits<double>::infinity();
            for (int round = 0; round < 40; ++round) {
                std::vector<double> eff(n), fl(n), rho(n);
                for (std::size_t m = 0; m < n; ++m) {
                    const SnapshotUser& u = snap.users[static_cast<std::size_t>(subset[m])];
                    rho[m] = beta[m] > 0.0 ? power[m] / beta[m] : 0.0;
                    eff[m] = std::log2(1.0 + rho[m] * u.gain_over_noise);
                    fl[m] = eff[m] > 0.0 ? u.qos_rate_bps / eff[m] : snap.bandwidth_hz * 2.0;
                }
                double fl_sum = 0.0;
                for (double f : fl) fl_sum += f;
                if (fl_sum <= snap.bandwidth_hz) {
                    // project beta onto the floors, then re-optimize the split
                    double slack_old = 0.0;
                    for (std::size_t m = 0; m < n; ++m)
                        slack_old += std::max(0.0, beta[m] - fl[m]);
                    const double slack_new = snap.bandwidth_hz - fl_sum;
                    for (std::size_t m = 0; m < n; ++m)
                        beta[m] = fl[m] + (slack_old > 0.0
                                               ? std::max(0.0, beta[m] - fl[m]) / slack_old *
                                                     slack_new
                                               : slack_new / static_cast<double>(n));
                    pairwise_exchange_opt(
                        beta, fl, &rho, snap.power_w,
                        [&](std::size_t m, double x) {
                            const SnapshotUser& u =
                                snap.users[static_cast<std::size_t>(subset[m])];
                            return std::log1p(x * eff[m] * dt / u.cumulative_bits);
                        },
                        21, 3);
                }
                // power split for the updated bandwidth
                std::vector<double> pmin(n);
                for (std::size_t m = 0; m < n; ++m) {
                    const SnapshotUser& u = snap.users[static_cast<std::size_t>(subset[m])];
                    pmin[m] = u.qos_rate_bps > 0.0 && beta[m] > 0.0
                                  ? beta[m] *
                                        std::expm1(std::numbers::ln2 * u.qos_rate_bps / beta[m]) /
                                        u.gain_over_noise
                                  : 0.0;
                    power[m] = std::max(power[m], pmin[m]);
                }
                double ptot = 0.0;
                for (double p : power) ptot += p;
                if (ptot > 0.0)
                    for (auto& p : power) p *= snap.power_w / ptot;
                for (std::size_t m = 0; m < n; ++m) power[m] = std::max(power[m], pmin[m]);
                const double v = pairwise_exchange_opt(
                    power, pmin, nullptr, 0.0,
                    [&](std::size_t m, double p) {
                        const SnapshotUser& u = snap.users[static_cast<std::size_t>(subset[m])];
                        if (beta[m] <= 0.0) return 0.0;
                        const double rate =
                            beta[m] * std::log2(1.0 + (p / beta[m]) * u.gain_over_noise);
                        return std::log1p(rate * dt / u.cumulative_bits);
                    },
                    21, 3);
                if (v <= value + 1e-10 * std::max(1.0, std::abs(v))) {
                    value = std::max(value, v);
                    break;
                }
                value = v;
            }
            return value;
        };

        // start (a): least-power bandwidth split, floors plus spare power
        // spread proportionally to bandwidth
        std::vector<double> p0(n);
        for (std::size_t m = 0; m < n; ++m) {
            const SnapshotUser& u = snap.users[static_cast<std::size_t>(subset[m])];
            const double zeta_b =
                u.qos_rate_bps > 0.0
                    ? beta_mp[m] * std::expm1(std::numbers::ln2 * u.qos_rate_bps / beta_mp[m]) /
                          u.gain_over_noise
                    : 0.0;
            p0[m] = zeta_b + spare * beta_mp[m] / snap.bandwidth_hz;
        }
        double best = run_from(beta_mp, p0);
        // start (b): equal bandwidth split under uniform PSD, when feasible
        std::vector<double> beq(n, snap.bandwidth_hz / static_cast<double>(n));
        std::vector<double> peq(n);
        bool eq_ok = true;
        const double uniform = snap.power_w / snap.bandwidth_hz;
        for (std::size_t m = 0; m < n; ++m) {
            const SnapshotUser& u = snap.users[static_cast<std::size_t>(subset[m])];
            const double eff = std::log2(1.0 + uniform * u.gain_over_noise);
            if (beq[m] * eff < u.qos_rate_bps) eq_ok = false;
            peq[m] = uniform * beq[m];
        }
        if (eq_ok) best = std::max(best, run_from(beq, peq));
        return best;
    };

    const std::size_t m = candidates.size();
    for (std::size_t mask = 1; mask < (std::size_t{1} << m); ++mask) {
        std::vector<int> subset;
        for (std::size_t b = 0; b < m; ++b)
            if (mask & (std::size_t{1} << b)) subset.push_back(candidates[b]);
        const double v = evaluate_subset(subset);
        ++result.subsets_evaluated;
        if (v > result.best_value) {
            result.best_value = v;
            result.best_subset = subset;
        }
    }
    return result;
}

/**
 * Reference value of the per-slot problem under the same alternating
 * structure as the production solver: enumerate every subset whose rate
 * floors fit the bandwidth under the uniform PSD start, then alternate a
 * grid search over the bandwidth split (PSD fixed) and a grid search over
 * the power split (bandwidth fixed), both on the raw objective, until the
 * value settles.
 *
 * relaxed_pc selects the power sub-problem being grid-searched: the
 * first-order relaxed objective sum (1/bits_i) * log2(1 + omega_i rho_i)
 * that the closed-form controller solves (true), or the raw fairness
 * increment (false). With the relaxed step this mirrors the production
 * alternation exactly; with the raw step it is a strictly stronger
 * reference that can leave corners where rate floors pin users at the
 * uniform PSD (the relaxed step cannot, and neither can the production
 * solver -- escaping needs a joint bandwidth/power move, which only
 * snapshot_oracle above performs).
 */
inline SnapshotOracleResult snapshot_grid_alternation_oracle(const Snapshot& snap,
                                                             bool relaxed_pc = true,
                                                             int max_users = 12) {
    std::vector<int> candidates;
    const double uniform = snap.power_w / snap.bandwidth_hz;
    for (std::size_t i = 0; i < snap.user_count(); ++i)
        if (snap.users[i].active && snap.users[i].gain_over_noise > 0.0)
            candidates.push_back(static_cast<int>(i));
    if (candidates.size() > static_cast<std::size_t>(max_users))
        throw SizeGuardError("snapshot_grid_alternation_oracle: too many candidates");

    const double dt = snap.slot_duration_s;
    auto evaluate_subset = [&](const std::vector<int>& subset) {
        const std::size_t n = subset.size();
        std::vector<double> fl0(n), beta(n), power(n);
        double fl_sum = 0.0;
        for (std::size_t m = 0; m < n; ++m) {
            const SnapshotUser& u = snap.users[static_cast<std::size_t>(subset[m])];
            const double eff = std::log2(1.0 + uniform * u.gain_over_noise);
            if (eff <= 0.0) return -1.0;
            fl0[m] = u.qos_rate_bps / eff;
            fl_sum += fl0[m];
        }
        if (fl_sum > snap.bandwidth_hz * (1.0 + 1e-12)) return -1.0; // uniform start infeasible

        // uniform-PSD start: floors plus an even split of the slack
        for (std::size_t m = 0; m < n; ++m) {
            beta[m] = fl0[m] + (snap.bandwidth_hz - fl_sum) / static_cast<double>(n);
            power[m] = uniform * beta[m];
        }
        double value = -std::numeric_limits<double>::infinity();
        for (int round = 0; round < 60; ++round) {
            // bandwidth split at fixed PSD
            std::vector<double> rho(n), eff(n), fl(n);
            for (std::size_t m = 0; m < n; ++m) {
                const SnapshotUser& u = snap.users[static_cast<std::size_t>(subset[m])];
                rho[m] = beta[m] > 0.0 ? power[m] / beta[m] : 0.0;
                eff[m] = std::log2(1.0 + rho[m] * u.gain_over_noise);
                fl[m] = eff[m] > 0.0 ? u.qos_rate_bps / eff[m] : snap.bandwidth_hz * 2.0;
            }
            pairwise_exchange_opt(
                beta, fl, &rho, snap.power_w,
                [&](std::size_t m, double x) {
                    const SnapshotUser& u = snap.users[static_cast<std::size_t>(subset[m])];
                    return std::log1p(x * eff[m] * dt / u.cumulative_bits);
                },
                21, 3);
            for (std::size_t m = 0; m < n; ++m) power[m] = rho[m] * beta[m];
            // power split at fixed bandwidth
            std::vector<double> pmin(n);
            for (std::size_t m = 0; m < n; ++m) {
                const SnapshotUser& u = snap.users[static_cast<std::size_t>(subset[m])];
                pmin[m] = u.qos_rate_bps > 0.0 && beta[m] > 0.0
                              ? beta[m] *
                                    std::expm1(std::numbers::ln2 * u.qos_rate_bps / beta[m]) /
                                    u.gain_over_noise
                              : 0.0;
                power[m] = std::max(power[m], pmin[m]);
            }
            if (relaxed_pc) {
                pairwise_exchange_opt(
                    power, pmin, nullptr, 0.0,
                    [&](std::size_t m, double p) {
                        const SnapshotUser& u = snap.users[static_cast<std::size_t>(subset[m])];
                        if (beta[m] <= 0.0) return 0.0;
                        return std::log2(1.0 + (p / beta[m]) * u.gain_over_noise) /
                               u.cumulative_bits;
                    },
                    21, 3);
            } else {
                pairwise_exchange_opt(
                    power, pmin, nullptr, 0.0,
                    [&](std::size_t m, double p) {
                        const SnapshotUser& u = snap.users[static_cast<std::size_t>(subset[m])];
                        if (beta[m] <= 0.0) return 0.0;
                        const double rate =
                            beta[m] * std::log2(1.0 + (p / beta[m]) * u.gain_over_noise);
                        return std::log1p(rate * dt / u.cumulative_bits);
                    },
                    21, 3);
            }
            // raw fairness increment of the round's allocation
            double v = 0.0;
            for (std::size_t m = 0; m < n; ++m) {
                const SnapshotUser& u = snap.users[static_cast<std::size_t>(subset[m])];
                const double rate =
                    beta[m] > 0.0
                        ? beta[m] * std::log2(1.0 + (power[m] / beta[m]) * u.gain_over_noise)
                        : 0.0;
                v += std::log1p(rate * dt / u.cumulative_bits);
            }
            if (v <= value + 1e-9 * std::max(1.0, std::abs(v))) {
                value = std::max(value, v);
                break;
            }
            value = v;
        }
        return value;
    };

    SnapshotOracleResult result;
    const std::size_t m = candidates.size();
    for (std::size_t mask = 1; mask < (std::size_t{1} << m); ++mask) {
        std::vector<int> subset;
        for (std::size_t b = 0; b < m; ++b)
            if (mask & (std::size_t{1} << b)) subset.push_back(candidates[b]);
        const double v = evaluate_subset(subset);
        ++result.subsets_evaluated;
        if (v > result.best_value) {
            result.best_value = v;
            result.best_subset = subset;
        }
    }
    return result;
}

// ---------------------------------------------------------------------------
// randomized snapshot instances for the oracle comparisons
// ---------------------------------------------------------------------------

struct SnapshotInstanceSpec {
    int user_count = 5;
    double qos_rate_bps = 5.0e6;
    double cumulative_bits_lo = 1.0e7; // 10 Mb
    double cumulative_bits_hi = 3.0e7; // 30 Mb
    ScenarioSpec base;                 // map/channel defaults
};

// A single-slot problem with every user active, users uniform over the
// ground square, the base station at a uniformly drawn grid point and
// accumulated data uniform in the configured range.
inline Snapshot random_snapshot(const SnapshotInstanceSpec& spec, std::uint64_t seed) {
    SplitMix64 rng = SplitMix64(seed).child("snapshot");
    Snapshot snap;
    snap.bandwidth_hz = spec.base.channel.bandwidth_hz;
    snap.power_w = spec.base.channel.tx_power_w();
    snap.slot_duration_s = spec.base.dynamics.slot_duration_s;
    const GridMap& map = spec.base.map;
    GridPoint q{static_cast<int>(rng.uniform_int(0, map.max_ij())),
                static_cast<int>(rng.uniform_int(0, map.max_ij())),
                static_cast<int>(rng.uniform_int(map.min_k(), map.max_k()))};
    const Position qp = map.position_of(q);
    snap.users.resize(static_cast<std::size_t>(spec.user_count));
    for (auto& su : snap.users) {
        const Position up{rng.uniform_real(0.0, map.width_m), rng.uniform_real(0.0, map.width_m),
                          0.0};
        su.active = true;
        su.gain_over_noise = gain_over_noise(qp, up, spec.base.channel);
        su.cumulative_bits = rng.uniform_real(spec.cumulative_bits_lo, spec.cumulative_bits_hi);
        su.qos_rate_bps = spec.qos_rate_bps;
    }
    return snap;
}

} // namespace uavpf::oracle
