#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "uavpf/association.hpp"
#include "uavpf/oracles.hpp"

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

// objective of a fixed association set under uniform PSD, via water-filling
double set_objective(const Snapshot& snap, const std::vector<int>& members) {
    const double uniform = snap.power_w / snap.bandwidth_hz;
    WaterfillWeights in;
    for (int idx : members) {
        const auto i = static_cast<std::size_t>(idx);
        const double eff = spectral_efficiency(uniform, snap.users[i].gain_over_noise);
        in.weight.push_back(snap.fairness_weight(i, eff));
        in.floor_hz.push_back(snap.users[i].qos_rate_bps / eff);
    }
    double fl = 0.0;
    for (double f : in.floor_hz) fl += f;
    if (fl > snap.bandwidth_hz) return -1.0;
    const auto res = waterfill_bandwidth(in, snap.bandwidth_hz);
    double obj = 0.0;
    for (std::size_t m = 0; m < members.size(); ++m)
        obj += std::log1p(in.weight[m] * res.bandwidth_hz[m]);
    return obj;
}

} // namespace

TEST_CASE("association basics") {
    SECTION("one active user that fits gets everything") {
        auto snap = snapshot_of({{true, 1e12, 2e7, 5e6}});
        const auto res = user_association(snap);
        REQUIRE(res.members == std::vector<int>{0});
        CHECK(res.bandwidth_hz[0] == Approx(snap.bandwidth_hz).epsilon(1e-9));
    }
    SECTION("no active users: empty set, zero objective") {
        auto snap = snapshot_of({{false, 1e12, 2e7, 5e6}, {false, 1e12, 2e7, 5e6}});
        const auto res = user_association(snap);
        CHECK(res.members.empty());
        CHECK(res.objective == 0.0);
    }
    SECTION("a user whose floor cannot fit is never added") {
        // efficiency ~ log2(1 + 1e-7 * 1e9) = 6.6 bit/s/Hz; a 100 Mb/s floor
        // needs ~15 MHz of the 2 MHz budget
        auto snap = snapshot_of({{true, 1e9, 2e7, 1e8}, {true, 1e9, 2e7, 1e6}});
        const auto res = user_association(snap);
        CHECK(res.members == std::vector<int>{1});
    }
    SECTION("ties resolve to the lowest user id") {
        // identical users, but the budget only fits one rate floor
        SnapshotUser u{true, 1e9, 2e7, 9e6};
        auto snap = snapshot_of({u, u});
        const auto res = user_association(snap);
        REQUIRE(res.members.size() == 1);
        CHECK(res.members[0] == 0);
    }
}

TEST_CASE("greedy association is near the exhaustive subset optimum") {
    oracle::SnapshotInstanceSpec spec;
    spec.user_count = 5;
    for (int seed = 1; seed <= 20; ++seed) {
        const Snapshot snap = oracle::random_snapshot(spec, static_cast<std::uint64_t>(seed));
        const auto res = user_association(snap);

        // exhaustive enumeration of all 2^5 sets, each water-filled
        double best = 0.0;
        for (unsigned mask = 1; mask < 32; ++mask) {
            std::vector<int> members;
            for (int b = 0; b < 5; ++b)
                if (mask & (1u << b)) members.push_back(b);
            best = std::max(best, set_objective(snap, members));
        }
        REQUIRE(best > 0.0);
        CHECK(res.objective >= 0.99 * best);
        CHECK(res.objective <= best + 1e-9);
    }
}

TEST_CASE("association result is self-consistent") {
    oracle::SnapshotInstanceSpec spec;
    spec.user_count = 8;
    for (int seed = 1; seed <= 10; ++seed) {
        const Snapshot snap = oracle::random_snapshot(spec, 100 + static_cast<std::uint64_t>(seed));
        const auto res = user_association(snap);
        if (res.members.empty()) continue;
        CHECK(res.objective == Approx(set_objective(snap, res.members)).epsilon(1e-9));
        double total = 0.0;
        for (double b : res.bandwidth_hz) {
            CHECK(b >= 0.0);
            total += b;
        }
        CHECK(total <= snap.bandwidth_hz * (1.0 + 1e-9));
        // adding any further feasible user must not improve the objective
        for (int c = 0; c < 8; ++c) {
            if (!snap.users[static_cast<std::size_t>(c)].active) continue;
            if (std::count(res.members.begin(), res.members.end(), c)) continue;
            std::vector<int> extended = res.members;
            extended.insert(std::upper_bound(extended.begin(), extended.end(), c), c);
            CHECK(set_objective(snap, extended) <= res.objective + association_tie_tol);
        }
    }
}
