#pragma once

#include "uavpf/errors.hpp"
#include "uavpf/grid.hpp"

namespace uavpf {

// A ground device with a service request window [start_slot, start_slot +
// duration_slots) and a per-slot rate floor it must receive whenever served.
// initial_data_bits seeds the cumulative-throughput denominator of the
// fairness objective and must be positive.
struct User {
    int id = 0;
    Position position;          // z_m == 0
    int start_slot = 0;         // s_i
    int duration_slots = 1;     // T_i
    double qos_rate_bps = 0.0;  // r_i
    double initial_data_bits = 1.0;

    void validate() const {
        if (duration_slots < 1) throw UsageError("user.duration_slots must be >= 1");
        if (qos_rate_bps < 0.0) throw UsageError("user.qos_rate_bps must be >= 0");
        if (initial_data_bits <= 0.0) throw UsageError("user.initial_data_bits must be > 0");
    }
};

// Request-window indicator: start inclusive, end exclusive.
inline bool is_active(const User& u, int slot) {
    return u.start_slot <= slot && slot < u.start_slot + u.duration_slots;
}

} // namespace uavpf
