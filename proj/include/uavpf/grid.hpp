#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "uavpf/errors.hpp"

namespace uavpf {

// A point in metres. Users sit on the ground (z_m = 0); the base station
// flies on lattice points of the GridMap.
struct Position {
    double x_m = 0.0;
    double y_m = 0.0;
    double z_m = 0.0;
};

inline double distance(const Position& a, const Position& b) {
    const double dx = a.x_m - b.x_m;
    const double dy = a.y_m - b.y_m;
    const double dz = a.z_m - b.z_m;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

// Lattice coordinates (i, j, k): the physical point is grid_step_m * (i, j, k).
// Integer identity gives exact set membership and ordering; all planner
// bookkeeping happens in lattice space.
struct GridPoint {
    int i = 0;
    int j = 0;
    int k = 0;

    friend auto operator<=>(const GridPoint&, const GridPoint&) = default;
};

struct UavDynamics {
    double max_speed_mps = 15.0;
    double slot_duration_s = 3.0;

    double reach_radius_m() const { return max_speed_mps * slot_duration_s; }

    void validate() const {
        if (max_speed_mps <= 0.0) throw UsageError("dynamics.max_speed_mps must be > 0");
        if (slot_duration_s <= 0.0) throw UsageError("dynamics.slot_duration_s must be > 0");
    }
};

/**
 * The discretized flight volume: a square footprint of side width_m, lattice
 * step grid_step_m, altitudes restricted to [min_alt_m, max_alt_m]. Valid
 * lattice points satisfy
 *
 *   0 <= i * step <= width,  0 <= j * step <= width,
 *   min_alt <= k * step <= max_alt.
 */
struct GridMap {
    double width_m = 600.0;
    double grid_step_m = 40.0;
    double min_alt_m = 50.0;
    double max_alt_m = 200.0;

    void validate() const {
        if (width_m <= 0.0) throw UsageError("map.width_m must be > 0");
        if (grid_step_m <= 0.0) throw UsageError("map.grid_step_m must be > 0");
        if (min_alt_m <= 0.0 || min_alt_m > max_alt_m)
            throw UsageError("map requires 0 < min_alt_m <= max_alt_m");
        if (min_k() > max_k())
            throw UsageError("map has no admissible altitude level for this grid step");
    }

    int max_ij() const {
        return static_cast<int>(std::floor(width_m / grid_step_m + 1e-9));
    }
    int min_k() const {
        return static_cast<int>(std::ceil(min_alt_m / grid_step_m - 1e-9));
    }
    int max_k() const {
        return static_cast<int>(std::floor(max_alt_m / grid_step_m + 1e-9));
    }

    bool contains(const GridPoint& p) const {
        return p.i >= 0 && p.i <= max_ij() && p.j >= 0 && p.j <= max_ij() &&
               p.k >= min_k() && p.k <= max_k();
    }

    Position position_of(const GridPoint& p) const {
        return Position{p.i * grid_step_m, p.j * grid_step_m, p.k * grid_step_m};
    }

    // Nearest lattice point, clamped into the map. Rounds half away from zero.
    GridPoint snap(const Position& pos) const {
        auto clamp = [](int v, int lo, int hi) { return v < lo ? lo : (v > hi ? hi : v); };
        GridPoint p;
        p.i = clamp(static_cast<int>(std::llround(pos.x_m / grid_step_m)), 0, max_ij());
        p.j = clamp(static_cast<int>(std::llround(pos.y_m / grid_step_m)), 0, max_ij());
        p.k = clamp(static_cast<int>(std::llround(pos.z_m / grid_step_m)), min_k(), max_k());
        return p;
    }

    std::size_t point_count() const {
        const std::size_t side = static_cast<std::size_t>(max_ij()) + 1;
        const std::size_t levels = static_cast<std::size_t>(max_k() - min_k()) + 1;
        return side * side * levels;
    }
};

/**
 * All lattice points within one slot of flight from q, i.e.
 * { p in map : ||p - q||_2 <= max_speed * slot_duration }. Always contains q.
 * Returned in lexicographic (i, j, k) order, which planners rely on for
 * deterministic tie-breaking.
 */
inline std::vector<GridPoint> reachable_set(const GridMap& map, const UavDynamics& dyn,
                                            const GridPoint& q) {
    if (!map.contains(q))
        throw InvalidPositionError("reachable_set: position (" + std::to_string(q.i) + ", " +
                                   std::to_string(q.j) + ", " + std::to_string(q.k) +
                                   ") is not on the flight grid");
    const double radius = dyn.reach_radius_m();
    const double step = map.grid_step_m;
    const int span = static_cast<int>(std::floor(radius / step + 1e-9));
    const double r2 = (radius / step) * (radius / step) * (1.0 + 1e-12);

    std::vector<GridPoint> out;
    out.reserve(static_cast<std::size_t>(2 * span + 1));
    for (int di = -span; di <= span; ++di) {
        for (int dj = -span; dj <= span; ++dj) {
            for (int dk = -span; dk <= span; ++dk) {
                const double d2 = double(di) * di + double(dj) * dj + double(dk) * dk;
                if (d2 > r2) continue;
                GridPoint p{q.i + di, q.j + dj, q.k + dk};
                if (map.contains(p)) out.push_back(p);
            }
        }
    }
    return out; // loop order is already lexicographic
}

} // namespace uavpf
