#pragma once

#include <cstdint>
#include <string_view>

namespace uavpf {

/**
 * SplitMix64 generator.
 *
 * Chosen over std::mt19937 because its output is fully specified here,
 * independent of the standard library: the same seed produces the same
 * stream on every platform and toolchain. All randomized behaviour in the
 * library (scenario draws, genetic operators) goes through this class.
 *
 * Stream splitting: child(tag) derives an independent generator from the
 * construction seed and a label, so e.g. the scenario stream and each
 * planner's stream never share state. Children depend only on (seed, tag),
 * never on how many numbers the parent has drawn.
 */
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : seed0_(seed), state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform double in [0, 1), 53 random mantissa bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform in [lo, hi).
    double uniform_real(double lo, double hi) {
        return lo + (hi - lo) * next_double();
    }

    // Uniform integer in [lo, hi], both ends inclusive. Rejection sampling,
    // so the distribution is exactly uniform.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        if (span == 0) return lo + static_cast<std::int64_t>(next_u64()); // full 64-bit range
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % span + 1) % span;
        std::uint64_t x = next_u64();
        while (x > limit) x = next_u64();
        return lo + static_cast<std::int64_t>(x % span);
    }

    // Index in [0, n).
    std::size_t uniform_index(std::size_t n) {
        return static_cast<std::size_t>(uniform_int(0, static_cast<std::int64_t>(n) - 1));
    }

    std::uint64_t seed() const { return seed0_; }

    // Derive an independent child stream from a label. FNV-1a over the tag,
    // mixed with the construction seed.
    SplitMix64 child(std::string_view tag) const {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (char c : tag) {
            h ^= static_cast<std::uint8_t>(c);
            h *= 0x100000001b3ULL;
        }
        SplitMix64 mixer(seed0_ ^ (h | 1));
        return SplitMix64(mixer.next_u64());
    }

    SplitMix64 child(std::uint64_t tag) const {
        SplitMix64 mixer(seed0_ ^ (0x9e3779b97f4a7c15ULL * (tag + 1)));
        return SplitMix64(mixer.next_u64());
    }

private:
    std::uint64_t seed0_;
    std::uint64_t state_;
};

} // namespace uavpf
