#pragma once

#include <cstdint>

namespace diffmat {

/// Counter-based generator: the SplitMix64 finalizer applied to a
/// (seed, counter) pair.  Every output is a pure function of its inputs, so
/// parallel consumers can draw from disjoint counter ranges in any order and
/// still reproduce a serial run bit for bit, on any platform.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t seed() const { return seed_; }

    std::uint64_t value(std::uint64_t counter) const { return mix(counter, 0); }

    // Uniform residue in [0, g); rejection keeps the distribution exact.
    int residue(std::uint64_t counter, int g) const {
        const auto m = static_cast<std::uint64_t>(g);
        const std::uint64_t tail = (~std::uint64_t{0} % m + 1) % m;  // 2^64 mod g
        for (std::uint64_t attempt = 0;; ++attempt) {
            const std::uint64_t v = mix(counter, attempt);
            if (tail == 0 || v <= ~std::uint64_t{0} - tail)
                return static_cast<int>(v % m);
        }
    }

    // Uniform double in [0, 1) with 53-bit resolution.
    double real01(std::uint64_t counter) const {
        return static_cast<double>(value(counter) >> 11) * 0x1.0p-53;
    }

    // Uniform double in [-width, width).
    double symmetric(std::uint64_t counter, double width) const {
        return (2.0 * real01(counter) - 1.0) * width;
    }

private:
    std::uint64_t mix(std::uint64_t counter, std::uint64_t attempt) const {
        std::uint64_t z = seed_ + counter * 0x9E3779B97F4A7C15ULL;
        if (attempt) z += attempt * 0xC2B2AE3D27D4EB4FULL + 0x165667B19E3779F9ULL;
        z ^= z >> 30;
        z *= 0xBF58476D1CE4E5B9ULL;
        z ^= z >> 27;
        z *= 0x94D049BB133111EBULL;
        z ^= z >> 31;
        return z;
    }

    std::uint64_t seed_;
};

}  // namespace diffmat
