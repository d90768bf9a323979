#ifndef BOHM_RNG_HPP
#define BOHM_RNG_HPP

#include <cstdint>

namespace bohm {

/// Counter-based stream: output i is a stateless hash of (key, i), so any
/// element can be drawn in any order and parallel streams never interact.
/// Mixing function is the splitmix64 finalizer.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t key, std::uint64_t counter = 0)
        : key_(key), counter_(counter) {}

    /// Stream key for trajectory `index` under a run seed.
    static CounterRng for_stream(std::uint64_t seed, std::uint64_t index) {
        return CounterRng(seed ^ mix(index + 0x9E3779B97F4A7C15ULL));
    }

    std::uint64_t next_u64() { return mix(key_ + (++counter_) * 0x9E3779B97F4A7C15ULL); }

    /// Uniform in [0, 1).
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t key_;
    std::uint64_t counter_;
};

} // namespace bohm

#endif
