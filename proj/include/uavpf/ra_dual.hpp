#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "uavpf/errors.hpp"
#include "uavpf/snapshot.hpp"
#include "uavpf/waterfill.hpp"

namespace uavpf {

// Relative convergence tolerance shared by the dual loop and the outer
// alternation, and their iteration caps.
inline constexpr double rrm_convergence_tol = 1e-4;
inline constexpr int ra_dual_max_iter = 10000;
inline constexpr int rrm_outer_max_iter = 100;

/**
 * The bandwidth re-allocation problem for a fixed association and fixed
 * per-user PSD:
 *
 *   maximize   sum_i ln(1 + w_i * beta_i)
 *   subject to sum_i beta_i <= B,  sum_i rho_i * beta_i <= P,
 *              beta_i >= floor_i
 *
 * Internally everything is normalized so both budgets equal 1 (beta in
 * units of B, PSD in units of P/B). The paper-style multiplier seeds
 * (mu = 0.5, lambda1 = 0.5, lambda2 = 0.8) and the 0.1 learning rate are
 * only meaningful at that scale; in raw SI units (B ~ 1e6 Hz) the
 * subgradient iteration diverges or stalls.
 */
struct RaProblem {
    std::vector<double> weight_n; // w_i * B: reward term is ln(1 + weight_n * b)
    std::vector<double> floor_n;  // floor_i / B
    std::vector<double> psd_n;    // rho_i * B / P
    std::vector<int> members;     // user indices, for mapping back

    std::size_t size() const { return weight_n.size(); }

    // Objective at a normalized allocation, in nats.
    double objective(const std::vector<double>& b) const {
        double obj = 0.0;
        for (std::size_t m = 0; m < size(); ++m) obj += std::log1p(weight_n[m] * b[m]);
        return obj;
    }
};

// Multiplier state of the dual descent: mu_i for the share floors, lambda1
// for the bandwidth budget, lambda2 for the power budget. The dual domain
// requires o_i = lambda1 + lambda2 * psd_i - mu_i > 0 for every member.
struct DualState {
    std::vector<double> mu;
    double lambda1 = 0.5;
    double lambda2 = 0.8;
    double learning_rate = 0.1;
    double dual_value = std::numeric_limits<double>::infinity();

    static DualState initial(std::size_t members) {
        DualState s;
        s.mu.assign(members, 0.5);
        return s;
    }
};

namespace detail {

inline double dual_o(const DualState& s, const RaProblem& p, std::size_t m) {
    return s.lambda1 + s.lambda2 * p.psd_n[m] - s.mu[m];
}

// Dual function value. Includes the sum-of-log-weight constant so that at
// the optimum the dual value equals the primal objective (zero duality gap);
// the constant does not affect the multiplier updates.
inline double dual_value(const DualState& s, const RaProblem& p) {
    double v = 0.0;
    for (std::size_t m = 0; m < p.size(); ++m) {
        const double o = dual_o(s, p, m);
        if (o <= 0.0) return std::numeric_limits<double>::infinity();
        v += std::log(p.weight_n[m]) - 1.0 - std::log(o);
        v -= s.mu[m] * (1.0 / p.weight_n[m] + p.floor_n[m]);
    }
    double inv_w = 0.0, psd_over_w = 0.0;
    for (std::size_t m = 0; m < p.size(); ++m) {
        inv_w += 1.0 / p.weight_n[m];
        psd_over_w += p.psd_n[m] / p.weight_n[m];
    }
    v += s.lambda1 * (inv_w + 1.0) + s.lambda2 * (psd_over_w + 1.0);
    return v;
}

// Gradient of the dual function; components are the (negated) constraint
// residuals of the primal candidate b_i = 1/o_i - 1/w_i.
struct DualGradient {
    std::vector<double> mu;
    double lambda1 = 0.0;
    double lambda2 = 0.0;

    double max_abs() const {
        double g = std::max(std::abs(lambda1), std::abs(lambda2));
        for (double m : mu) g = std::max(g, std::abs(m));
        return g;
    }
};

inline DualGradient dual_gradient(const DualState& s, const RaProblem& p) {
    DualGradient g;
    g.mu.resize(p.size());
    double sum_b = 0.0, sum_pb = 0.0;
    for (std::size_t m = 0; m < p.size(); ++m) {
        const double b = 1.0 / dual_o(s, p, m) - 1.0 / p.weight_n[m];
        g.mu[m] = b - p.floor_n[m];
        sum_b += b;
        sum_pb += p.psd_n[m] * b;
    }
    g.lambda1 = 1.0 - sum_b;
    g.lambda2 = 1.0 - sum_pb;
    return g;
}

} // namespace detail

/**
 * One projected step of the dual descent: move every multiplier against its
 * subgradient, project onto the non-negative orthant, and accept only steps
 * that keep the dual domain (o_i > 0) and do not increase the dual value.
 * A rejected step halves the learning rate (floor 1e-6) and leaves the
 * multipliers unchanged. Returns true when the step was accepted.
 */
inline bool ra_dual_step(DualState& state, const RaProblem& p) {
    if (state.dual_value == std::numeric_limits<double>::infinity())
        state.dual_value = detail::dual_value(state, p);
    const detail::DualGradient g = detail::dual_gradient(state, p);

    DualState next = state;
    for (std::size_t m = 0; m < p.size(); ++m)
        next.mu[m] = std::max(0.0, state.mu[m] - state.learning_rate * g.mu[m]);
    next.lambda1 = std::max(0.0, state.lambda1 - state.learning_rate * g.lambda1);
    next.lambda2 = std::max(0.0, state.lambda2 - state.learning_rate * g.lambda2);

    bool domain_ok = true;
    for (std::size_t m = 0; m < p.size(); ++m)
        if (detail::dual_o(next, p, m) <= 0.0) { domain_ok = false; break; }

    const double v = domain_ok ? detail::dual_value(next, p)
                               : std::numeric_limits<double>::infinity();
    if (!domain_ok || v > state.dual_value) {
        state.learning_rate = std::max(state.learning_rate * 0.5, 1e-6);
        return false;
    }
    next.dual_value = v;
    // accepted steps regrow the rate towards its initial value
    next.learning_rate = std::min(state.learning_rate * 1.1, 0.1);
    state = std::move(next);
    return true;
}

namespace detail {

// Exact feasibility repair: raise shares to their floors, then shrink the
// slack above the floors uniformly until both budgets hold.
inline void clip_feasible(std::vector<double>& b, const RaProblem& p) {
    double floor_sum = 0.0, floor_pw = 0.0, sum_b = 0.0, sum_pb = 0.0;
    for (std::size_t m = 0; m < p.size(); ++m) {
        b[m] = std::max(b[m], p.floor_n[m]);
        floor_sum += p.floor_n[m];
        floor_pw += p.psd_n[m] * p.floor_n[m];
        sum_b += b[m];
        sum_pb += p.psd_n[m] * b[m];
    }
    double scale = 1.0;
    if (sum_b > 1.0 && sum_b > floor_sum)
        scale = std::min(scale, (1.0 - floor_sum) / (sum_b - floor_sum));
    if (sum_pb > 1.0 && sum_pb > floor_pw)
        scale = std::min(scale, (1.0 - floor_pw) / (sum_pb - floor_pw));
    if (scale < 1.0)
        for (std::size_t m = 0; m < p.size(); ++m)
            b[m] = p.floor_n[m] + scale * (b[m] - p.floor_n[m]);
}

} // namespace detail

struct RaResult {
    std::vector<double> bandwidth_n; // normalized shares, per member
    DualState state;
    int iterations = 0;
};

/**
 * Dual descent for the bandwidth re-allocation problem (gradient steps on
 * the multipliers until the dual value settles, then primal recovery via
 * b_i = 1/o_i - 1/w_i). The loop stops when the relative change of the dual
 * value is below tol and the complementary-slackness residuals are below
 * tol; it throws NonConvergenceError at the iteration cap.
 */
inline RaResult ra_optimize(const RaProblem& p, double tol = rrm_convergence_tol,
                            int max_iter = ra_dual_max_iter) {
    RaResult res;
    if (p.size() == 0) return res;

    double floor_sum = 0.0;
    for (double f : p.floor_n) floor_sum += f;
    if (floor_sum > 1.0 + 1e-9)
        throw InfeasibleError("ra_optimize: share floors exceed the bandwidth budget");

    DualState s = DualState::initial(p.size());
    s.dual_value = detail::dual_value(s, p);
    double prev = std::numeric_limits<double>::infinity();
    int it = 0;
    bool converged = false;
    for (; it < max_iter; ++it) {
        const bool accepted = ra_dual_step(s, p);
        if (!accepted) {
            if (s.learning_rate <= 1e-6 + 1e-15) break; // no smaller step available
            continue;
        }
        const bool value_settled =
            std::abs(s.dual_value - prev) <= tol * std::max(1.0, std::abs(s.dual_value));
        prev = s.dual_value;
        if (!value_settled) continue;
        // require the KKT complementarity residuals to settle as well
        const detail::DualGradient g = detail::dual_gradient(s, p);
        double comp = std::max(std::abs(s.lambda1 * g.lambda1), std::abs(s.lambda2 * g.lambda2));
        for (std::size_t m = 0; m < p.size(); ++m)
            comp = std::max(comp, std::abs(s.mu[m] * g.mu[m]));
        if (comp <= tol) { converged = true; break; }
    }
    if (!converged && it >= max_iter)
        throw NonConvergenceError("ra_optimize: dual descent hit the iteration cap (" +
                                  std::to_string(max_iter) + "), last dual value " +
                                  std::to_string(s.dual_value));

    res.bandwidth_n.resize(p.size());
    for (std::size_t m = 0; m < p.size(); ++m)
        res.bandwidth_n[m] = 1.0 / detail::dual_o(s, p, m) - 1.0 / p.weight_n[m];
    detail::clip_feasible(res.bandwidth_n, p);
    res.state = s;
    res.iterations = it;
    return res;
}

/**
 * Exact solver of the same problem. With the floor multipliers eliminated in
 * closed form, the primal shares depend on (lambda1, lambda2) alone:
 *
 *   b_i(l1, l2) = max(floor_i, 1/(l1 + l2 * psd_i) - 1/w_i)
 *
 * and the active budgets are located by (nested) bisection: bandwidth-only,
 * power-only, or both. This is the solver used inside the per-slot
 * evaluation loop; the dual descent above is kept as the reference method
 * and both agree to within the bisection tolerance (zero duality gap).
 */
inline std::vector<double> ra_solve_exact(const RaProblem& p) {
    const std::size_t n = p.size();
    std::vector<double> b(n, 0.0);
    if (n == 0) return b;

    double floor_sum = 0.0;
    for (double f : p.floor_n) floor_sum += f;
    if (floor_sum > 1.0 + 1e-9)
        throw InfeasibleError("ra_solve_exact: share floors exceed the bandwidth budget");

    auto fill = [&](double l1, double l2) {
        double sb = 0.0, spb = 0.0;
        for (std::size_t m = 0; m < n; ++m) {
            const double o = l1 + l2 * p.psd_n[m];
            b[m] = std::max(p.floor_n[m], 1.0 / o - 1.0 / p.weight_n[m]);
            sb += b[m];
            spb += p.psd_n[m] * b[m];
        }
        return std::pair{sb, spb};
    };

    // Bandwidth-only water level: b_i = max(floor, 1/l1 - 1/w).
    WaterfillWeights ww;
    ww.weight = p.weight_n;
    ww.floor_hz = p.floor_n;
    const WaterfillResult wf = waterfill_bandwidth(ww, 1.0);
    b = wf.bandwidth_hz;
    double power = 0.0;
    for (std::size_t m = 0; m < n; ++m) power += p.psd_n[m] * b[m];
    if (power <= 1.0 + 1e-9) {
        detail::clip_feasible(b, p);
        return b;
    }

    // Power-only water level: bisect lambda2 with lambda1 = 0.
    auto power_at = [&](double l2) { return fill(0.0, l2).second; };
    double l2_lo = 1.0, l2_hi = 1.0;
    for (int it = 0; it < bisection_max_iter && power_at(l2_lo) <= 1.0; ++it) l2_lo *= 0.5;
    for (int it = 0; it < bisection_max_iter && power_at(l2_hi) > 1.0; ++it) l2_hi *= 2.0;
    for (int it = 0; it < bisection_max_iter; ++it) {
        const double mid = 0.5 * (l2_lo + l2_hi);
        if (std::abs(power_at(mid) - 1.0) <= bisection_rel_tol) break;
        (power_at(mid) > 1.0 ? l2_lo : l2_hi) = mid;
    }
    const double l2_power_only = 0.5 * (l2_lo + l2_hi);
    auto [sb_po, spb_po] = fill(0.0, l2_power_only);
    if (sb_po <= 1.0 + 1e-9) {
        detail::clip_feasible(b, p);
        return b;
    }

    // Both budgets active. Inner: lambda1 >= 0 meeting the bandwidth budget
    // for a given lambda2; outer: bisect lambda2 on the power residual.
    auto solve_l1 = [&](double l2) {
        if (fill(0.0, l2).first <= 1.0) return 0.0;
        double lo = 1e-12, hi = 1.0;
        for (int it = 0; it < bisection_max_iter && fill(lo, l2).first <= 1.0; ++it) lo *= 0.5;
        for (int it = 0; it < bisection_max_iter && fill(hi, l2).first > 1.0; ++it) hi *= 2.0;
        for (int it = 0; it < bisection_max_iter; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (std::abs(fill(mid, l2).first - 1.0) <= bisection_rel_tol) return mid;
            (fill(mid, l2).first > 1.0 ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    };

    // At lambda2 -> 0 the inner solve reproduces the bandwidth-only point
    // (power residual > 0); at the power-only lambda2 the residual is < 0.
    double out_lo = 1e-12, out_hi = l2_power_only;
    for (int it = 0; it < bisection_max_iter; ++it) {
        const double mid = 0.5 * (out_lo + out_hi);
        const double l1 = solve_l1(mid);
        const double resid = fill(l1, mid).second - 1.0;
        if (std::abs(resid) <= bisection_rel_tol) break;
        (resid > 0.0 ? out_lo : out_hi) = mid;
    }
    const double l2_final = 0.5 * (out_lo + out_hi);
    fill(solve_l1(l2_final), l2_final);
    detail::clip_feasible(b, p);
    return b;
}

// Assembles the normalized problem for the associated users that currently
// have positive PSD (zero-PSD members carry zero spectral efficiency and are
// pinned to a zero share). Returns the full-length SI bandwidth vector.
inline RaProblem make_ra_problem(const Snapshot& snap, const std::vector<int>& members,
                                 const std::vector<double>& psd_w_hz) {
    RaProblem p;
    for (int idx : members) {
        const auto i = static_cast<std::size_t>(idx);
        const double rho = psd_w_hz[i];
        if (rho <= 0.0) continue;
        const double eff = spectral_efficiency(rho, snap.users[i].gain_over_noise);
        if (eff <= 0.0) continue;
        p.members.push_back(idx);
        p.weight_n.push_back(snap.fairness_weight(i, eff) * snap.bandwidth_hz);
        p.floor_n.push_back(snap.users[i].qos_rate_bps / eff / snap.bandwidth_hz);
        p.psd_n.push_back(rho * snap.bandwidth_hz / snap.power_w);
    }
    return p;
}

inline std::vector<double> scatter_bandwidth(const RaProblem& p,
                                             const std::vector<double>& b_norm,
                                             double bandwidth_hz, std::size_t user_count) {
    std::vector<double> beta(user_count, 0.0);
    for (std::size_t m = 0; m < p.size(); ++m)
        beta[static_cast<std::size_t>(p.members[m])] = b_norm[m] * bandwidth_hz;
    return beta;
}

} // namespace uavpf
