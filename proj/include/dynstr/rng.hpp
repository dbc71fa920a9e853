#pragma once

#include <cstdint>

namespace dynstr {

// SplitMix64. All randomness in the project flows through this generator;
// there is no ambient entropy anywhere, so identical seeds replay identically.
class SplitMix64 {
public:
    explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    constexpr std::uint64_t next() noexcept {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform value in [0, m). m must be positive.
    std::uint64_t below(std::uint64_t m) noexcept {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next()) * m) >> 64);
    }

    bool chance_one_in(std::uint64_t m) noexcept { return below(m) == 0; }

    // Independent stream k derived from a base seed (splittable-generator idiom).
    static constexpr std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t k) noexcept {
        std::uint64_t z = seed + (k + 1) * 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

}  // namespace dynstr
