#pragma once

#include <cassert>
#include <cstdint>
#include <vector>

namespace stsp {

/// Deterministic 64-bit generator (SplitMix64, Steele/Lea/Flood 2014).
///
/// state' = state + 0x9e3779b97f4a7c15; the output is the state scrambled
/// by two xor-shift-multiply rounds.  Every piece of randomness in the
/// toolkit flows through this class: the standard library's distributions
/// are implementation-defined, which would break the guarantee that one
/// seed yields byte-identical instances on every platform.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1), using the top 53 bits.
    double next_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform double strictly inside (lo, hi).
    double next_open(double lo, double hi) {
        assert(lo < hi);
        // (r + 0.5) * 2^-53 is strictly inside (0, 1).
        double u = (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
        return lo + u * (hi - lo);
    }

    /// Uniform integer in [lo, hi], rejection-sampled so every value is
    /// exactly equally likely.
    std::int64_t next_int(std::int64_t lo, std::int64_t hi) {
        assert(lo <= hi);
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1ULL;
        if (span == 0) return static_cast<std::int64_t>(next_u64());  // full 64-bit range
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
        std::uint64_t r;
        do {
            r = next_u64();
        } while (r >= limit);
        return lo + static_cast<std::int64_t>(r % span);
    }

    /// Fisher-Yates shuffle; consumes exactly size()-1 draws.
    template <typename T>
    void shuffle(std::vector<T>& items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            const auto j = static_cast<std::size_t>(next_int(0, static_cast<std::int64_t>(i) - 1));
            std::swap(items[i - 1], items[j]);
        }
    }

private:
    std::uint64_t state_;
};

}  // namespace stsp
