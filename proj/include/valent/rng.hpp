#pragma once

#include <cstdint>

namespace valent {

/// Counter-based generator (SplitMix64 finalizer over key + counter).
/// Output depends only on (key, counter), so streams can be split by deriving
/// fresh keys and consumers stay reproducible across platforms and runs.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t key) : key_(key) {}

    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xBF58476D1CE4E5B9ULL;
        z ^= z >> 27;
        z *= 0x94D049BB133111EBULL;
        z ^= z >> 31;
        return z;
    }

    static std::uint64_t at(std::uint64_t key, std::uint64_t counter) {
        return mix(key + 0x9E3779B97F4A7C15ULL * (counter + 1));
    }

    /// Independent stream for a sub-task (sample index, worker id, ...).
    static CounterRng derive(std::uint64_t seed, std::uint64_t stream) {
        return CounterRng(mix(seed ^ at(0x5851F42D4C957F2DULL, stream)));
    }

    std::uint64_t next() { return at(key_, counter_++); }

    /// Uniform in [0, m) by rejection; m >= 1.
    std::uint64_t below(std::uint64_t m) {
        const std::uint64_t limit = m * (UINT64_MAX / m);
        std::uint64_t x = next();
        while (x >= limit) x = next();
        return x % m;
    }

    long range(long lo, long hi) {  // inclusive bounds
        return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    bool chance(double p) { return next() < static_cast<std::uint64_t>(p * 18446744073709551615.0); }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace valent
