#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "uavpf/errors.hpp"

namespace uavpf {

// Bisection controls shared by the water-level searches: bracket by
// doubling until the budget residual changes sign, stop at a relative
// residual of 1e-9, cap at 200 halvings.
inline constexpr double bisection_rel_tol = 1e-9;
inline constexpr int bisection_max_iter = 200;

// Inputs of the floored water-filling problem, one entry per candidate user:
// weight w_i of the reward term ln(1 + w_i * beta_i) and the minimum share
// floor_i = r_i / e_i required by the user's rate floor.
struct WaterfillWeights {
    std::vector<double> weight;
    std::vector<double> floor_hz;
};

struct WaterfillResult {
    std::vector<double> bandwidth_hz; // per candidate, same order as the weights
    double level = std::numeric_limits<double>::quiet_NaN(); // lambda; NaN when empty
};

/**
 * Floored water-filling:
 *
 *   maximize   sum_i ln(1 + w_i * beta_i)
 *   subject to sum_i beta_i = B,  beta_i >= floor_i
 *
 * The optimum is beta_i = max(floor_i, 1/lambda - 1/w_i) with the water
 * level lambda chosen so the budget holds with equality; lambda is found by
 * bisection on the height h = 1/lambda (total share is increasing in h).
 *
 * Throws InfeasibleError when the floors alone exceed the budget.
 */
inline WaterfillResult waterfill_bandwidth(const WaterfillWeights& in, double budget_hz) {
    const std::size_t n = in.weight.size();
    if (in.floor_hz.size() != n)
        throw std::invalid_argument("waterfill_bandwidth: weight/floor size mismatch");
    WaterfillResult res;
    if (n == 0) return res; // empty association: all-zero shares, level undefined

    double floor_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!(in.weight[i] > 0.0))
            throw std::invalid_argument("waterfill_bandwidth: weights must be positive");
        if (in.floor_hz[i] < 0.0)
            throw std::invalid_argument("waterfill_bandwidth: floors must be non-negative");
        floor_sum += in.floor_hz[i];
    }
    if (floor_sum > budget_hz * (1.0 + 1e-12))
        throw InfeasibleError("waterfill_bandwidth: floors " + std::to_string(floor_sum) +
                              " Hz exceed budget " + std::to_string(budget_hz) + " Hz");

    res.bandwidth_hz.resize(n);
    auto fill = [&](double height) {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double b = std::max(in.floor_hz[i], height - 1.0 / in.weight[i]);
            res.bandwidth_hz[i] = b;
            total += b;
        }
        return total;
    };

    // All floors binding: the level is at (or below) every ground height.
    if (floor_sum >= budget_hz * (1.0 - 1e-12)) {
        fill(0.0);
        res.level = std::numeric_limits<double>::infinity();
        return res;
    }

    double lo = 0.0;                 // fill(lo) = floor_sum < budget
    double hi = budget_hz;           // grows until fill(hi) >= budget
    for (int it = 0; it < bisection_max_iter && fill(hi) < budget_hz; ++it) hi *= 2.0;
    for (int it = 0; it < bisection_max_iter; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double total = fill(mid);
        if (std::abs(total - budget_hz) <= bisection_rel_tol * budget_hz) {
            res.level = 1.0 / mid;
            return res;
        }
        (total < budget_hz ? lo : hi) = mid;
    }
    fill(0.5 * (lo + hi));
    res.level = 2.0 / (lo + hi);
    return res;
}

} // namespace uavpf
