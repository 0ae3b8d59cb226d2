#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "uavpf/grid.hpp"
#include "uavpf/rng.hpp"

using namespace uavpf;

namespace {
const GridMap kMap{600.0, 40.0, 50.0, 200.0};
const UavDynamics kDyn{15.0, 3.0};
} // namespace

TEST_CASE("grid index ranges follow the altitude band") {
    CHECK(kMap.max_ij() == 15);
    CHECK(kMap.min_k() == 2); // 80 m is the lowest admissible level above 50 m
    CHECK(kMap.max_k() == 5);
    CHECK(kMap.point_count() == 16 * 16 * 4);
    CHECK_FALSE(kMap.contains(GridPoint{0, 0, 1}));
    CHECK(kMap.contains(GridPoint{0, 0, 2}));
}

TEST_CASE("snapping rounds to the nearest lattice point and clamps") {
    const GridPoint p = kMap.snap(Position{300.0, 300.0, 200.0});
    CHECK(p == GridPoint{8, 8, 5}); // 300/40 = 7.5 rounds away from zero
    CHECK(kMap.snap(Position{-50.0, 700.0, 10.0}) == GridPoint{0, 15, 2});
    const Position back = kMap.position_of(GridPoint{8, 8, 5});
    CHECK(back.x_m == 320.0);
    CHECK(back.z_m == 200.0);
}

TEST_CASE("reachable set matches the one-slot flight radius") {
    SECTION("interior point: itself plus the six axis neighbours") {
        const auto s = reachable_set(kMap, kDyn, GridPoint{7, 7, 3});
        REQUIRE(s.size() == 7);
        CHECK(std::count(s.begin(), s.end(), GridPoint{7, 7, 3}) == 1);
        // in-plane diagonals sit at 40*sqrt(2) ~ 56.6 m, beyond the 45 m radius
        CHECK(std::count(s.begin(), s.end(), GridPoint{8, 8, 3}) == 0);
        CHECK(std::is_sorted(s.begin(), s.end()));
    }
    SECTION("radius below the grid step leaves only the point itself") {
        const UavDynamics slow{10.0, 3.0}; // 30 m
        const auto s = reachable_set(kMap, slow, GridPoint{7, 7, 3});
        REQUIRE(s.size() == 1);
        CHECK(s[0] == GridPoint{7, 7, 3});
    }
    SECTION("corner at the lowest altitude: three in-bounds neighbours") {
        const auto s = reachable_set(kMap, kDyn, GridPoint{0, 0, 2});
        CHECK(s.size() == 4);
    }
    SECTION("off-grid query is rejected") {
        CHECK_THROWS_AS(reachable_set(kMap, kDyn, GridPoint{0, 0, 0}), InvalidPositionError);
        CHECK_THROWS_AS(reachable_set(kMap, kDyn, GridPoint{16, 0, 3}), InvalidPositionError);
    }
}

TEST_CASE("reachability is symmetric") {
    SplitMix64 rng(42);
    for (int trial = 0; trial < 200; ++trial) {
        const GridPoint q{static_cast<int>(rng.uniform_int(0, kMap.max_ij())),
                          static_cast<int>(rng.uniform_int(0, kMap.max_ij())),
                          static_cast<int>(rng.uniform_int(kMap.min_k(), kMap.max_k()))};
        for (const GridPoint& p : reachable_set(kMap, kDyn, q)) {
            const auto back = reachable_set(kMap, kDyn, p);
            CHECK(std::count(back.begin(), back.end(), q) == 1);
        }
    }
}
