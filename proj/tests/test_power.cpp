#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "uavpf/oracles.hpp"
#include "uavpf/power.hpp"

using namespace uavpf;
using Catch::Approx;

namespace {

Snapshot snapshot_of(std::vector<SnapshotUser> users, double b = 2e6, double p = 0.2,
                     double dt = 3.0) {
    Snapshot s;
    s.users = std::move(users);
    s.bandwidth_hz = b;
    s.power_w = p;
    s.slot_duration_s = dt;
    return s;
}

} // namespace

TEST_CASE("power control basics") {
    SECTION("single user without a floor burns the whole budget") {
        auto snap = snapshot_of({{true, 1e12, 2e7, 0.0}});
        const auto rho = pc_closed_form(snap, {0}, {1.5e6});
        CHECK(rho[0] == Approx(snap.power_w / 1.5e6).epsilon(1e-9));
    }
    SECTION("symmetric users get identical PSD") {
        SnapshotUser u{true, 1e12, 2e7, 0.0};
        auto snap = snapshot_of({u, u});
        const auto rho = pc_closed_form(snap, {0, 1}, {1e6, 1e6});
        CHECK(rho[0] == Approx(rho[1]).epsilon(1e-9));
        CHECK(rho[0] * 1e6 + rho[1] * 1e6 == Approx(snap.power_w).epsilon(1e-9));
    }
    SECTION("zero-bandwidth members receive zero PSD") {
        SnapshotUser u{true, 1e12, 2e7, 0.0};
        auto snap = snapshot_of({u, u});
        const auto rho = pc_closed_form(snap, {0, 1}, {2e6, 0.0});
        CHECK(rho[1] == 0.0);
        CHECK(rho[0] * 2e6 == Approx(snap.power_w).epsilon(1e-9));
    }
    SECTION("floors beyond the power budget are infeasible") {
        // weak channel: the PSD needed for 5 Mb/s over 1 MHz dwarfs the budget
        auto snap = snapshot_of({{true, 1e4, 2e7, 5e6}});
        CHECK_THROWS_AS(pc_closed_form(snap, {0}, {1e6}), InfeasibleError);
    }
}

TEST_CASE("rate floors are met exactly or exceeded") {
    oracle::SnapshotInstanceSpec spec;
    spec.user_count = 4;
    for (int seed = 1; seed <= 10; ++seed) {
        const Snapshot snap = oracle::random_snapshot(spec, 300 + static_cast<std::uint64_t>(seed));
        // fixed bandwidth split: floors of an equal split, when feasible
        std::vector<double> beta(4, snap.bandwidth_hz / 4.0);
        std::vector<int> members{0, 1, 2, 3};
        double floor_power = 0.0;
        for (int i = 0; i < 4; ++i) {
            const auto& u = snap.users[static_cast<std::size_t>(i)];
            floor_power += beta[static_cast<std::size_t>(i)] *
                           std::expm1(std::numbers::ln2 * u.qos_rate_bps /
                                      beta[static_cast<std::size_t>(i)]) /
                           u.gain_over_noise;
        }
        if (floor_power > snap.power_w) continue;
        const auto rho = pc_closed_form(snap, members, beta);
        double spent = 0.0;
        for (int i = 0; i < 4; ++i) {
            const auto iu = static_cast<std::size_t>(i);
            const double rate =
                beta[iu] * spectral_efficiency(rho[iu], snap.users[iu].gain_over_noise);
            CHECK(rate >= snap.users[iu].qos_rate_bps * (1.0 - 1e-9));
            spent += rho[iu] * beta[iu];
        }
        CHECK(spent == Approx(snap.power_w).epsilon(1e-9));
    }
}

TEST_CASE("three users against the PSD grid oracle") {
    // one strong, one medium, one weak channel; the weak user's steep rate
    // floor pins it at its minimum PSD
    Snapshot snap = snapshot_of({{true, 5e11, 1.2e7, 2e6},
                                 {true, 1e11, 2.5e7, 2e6},
                                 {true, 4e9, 1.8e7, 4e6}});
    const std::vector<double> beta{0.9e6, 0.7e6, 0.4e6};
    const std::vector<int> members{0, 1, 2};
    const auto rho = pc_closed_form(snap, members, beta);

    std::vector<double> tau(3), omega(3), zeta(3);
    for (int i = 0; i < 3; ++i) {
        const auto iu = static_cast<std::size_t>(i);
        tau[iu] = 1.0 / snap.users[iu].cumulative_bits;
        omega[iu] = snap.users[iu].gain_over_noise;
        zeta[iu] = std::expm1(std::numbers::ln2 * snap.users[iu].qos_rate_bps / beta[iu]) /
                   omega[iu];
    }
    auto relaxed = [&](const std::vector<double>& r) {
        double v = 0.0;
        for (int i = 0; i < 3; ++i)
            v += tau[static_cast<std::size_t>(i)] *
                 std::log2(1.0 + omega[static_cast<std::size_t>(i)] *
                                     r[static_cast<std::size_t>(i)]);
        return v;
    };
    std::vector<double> rho_grid;
    const double ref =
        oracle::pc_grid_oracle(tau, omega, beta, zeta, snap.power_w, 41, 5, &rho_grid);
    REQUIRE(rho_grid[2] == Approx(zeta[2]).epsilon(0.02)); // the weak floor binds

    const double got = relaxed(rho);
    CHECK(got >= ref * (1.0 - 1e-3));
    CHECK(got <= ref * (1.0 + 1e-3) + 1e-12);
}
