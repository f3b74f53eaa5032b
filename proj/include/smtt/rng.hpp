#pragma once

/// @file rng.hpp
/// @brief Portable seeded random numbers and seed derivation.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. The standard distributions are not (their algorithms vary between
/// library vendors), so bounded integers and unit reals are derived here:
///
///  - below(n): rejection sampling. Draw r from the engine, reject while
///    r >= 2^64 - (2^64 mod n), return r mod n.
///  - uniform01(): top 53 bits of one draw scaled by 2^-53, in [0, 1).
///
/// Seed derivation uses SplitMix64 (Steele, Lea, Flood 2014):
///
///     splitmix64(x): z = x + 0x9E3779B97F4A7C15
///                    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///                    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///                    return z ^ (z >> 31)
///
///     derive_seed(s, k)         = splitmix64(s ^ splitmix64(k))
///     derive_seed(s, k1, k2...) = derive_seed(derive_seed(s, k1), k2, ...)

#include <chrono>
#include <cstdint>
#include <random>

namespace smtt {

[[nodiscard]] constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    std::uint64_t z = x + 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

[[nodiscard]] constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t key) noexcept {
    return splitmix64(seed ^ splitmix64(key));
}

template <typename... Keys>
[[nodiscard]] constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t key, Keys... rest) noexcept {
    return derive_seed(derive_seed(seed, key), static_cast<std::uint64_t>(rest)...);
}

/// A fresh non-deterministic seed for runs that leave the seed blank.
[[nodiscard]] inline std::uint64_t fresh_seed() {
    std::random_device rd;
    const auto hi = static_cast<std::uint64_t>(rd()) << 32;
    const auto lo = static_cast<std::uint64_t>(rd());
    const auto ticks = static_cast<std::uint64_t>(std::chrono::steady_clock::now().time_since_epoch().count());
    return splitmix64(hi ^ lo ^ splitmix64(ticks));
}

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform integer in [0, n). Requires n >= 1.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t reject_from = 0 - ((0 - n) % n); // 2^64 - (2^64 mod n), wraps to 0 for powers of two
        for (;;) {
            const std::uint64_t r = engine_();
            if (reject_from == 0 || r < reject_from) {
                return r % n;
            }
        }
    }

    /// Uniform integer in [lo, hi], inclusive. Requires lo <= hi.
    std::int64_t between(std::int64_t lo, std::int64_t hi) {
        const auto span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
        if (span == 0) { // full 64-bit range
            return static_cast<std::int64_t>(engine_());
        }
        return lo + static_cast<std::int64_t>(below(span));
    }

    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// True with probability `p`; p <= 0 never fires, p >= 1 always does.
    /// Always consumes exactly one draw.
    bool chance(double p) { return uniform01() < p; }

    std::uint64_t next() { return engine_(); }

  private:
    std::mt19937_64 engine_;
};

} // namespace smtt
