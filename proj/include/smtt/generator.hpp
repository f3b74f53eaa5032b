#pragma once

/// @file generator.hpp
/// @brief Seeded random instances with discrete-uniform processing times and due dates.

#include <cstdint>
#include <string>
#include <vector>

#include "smtt/core.hpp"
#include "smtt/rng.hpp"

namespace smtt {

/// Inclusive integer bounds for random instances. Defaults match the ten-job
/// worked example: p in [10, 20], d in [50, 150].
struct GenSpec {
    std::size_t n = 10;
    Time p_min = 10;
    Time p_max = 20;
    Time d_min = 50;
    Time d_max = 150;
    std::uint64_t seed = 0;
};

inline void validate(const GenSpec& spec) {
    if (spec.n < 1) {
        throw ValidationError("generator: n must be >= 1");
    }
    if (spec.p_min < 1 || spec.p_min > spec.p_max) {
        throw ValidationError("generator: need 1 <= p_min <= p_max, got [" + std::to_string(spec.p_min) + ", " +
                              std::to_string(spec.p_max) + "]");
    }
    if (spec.d_min < 0 || spec.d_min > spec.d_max) {
        throw ValidationError("generator: need 0 <= d_min <= d_max, got [" + std::to_string(spec.d_min) + ", " +
                              std::to_string(spec.d_max) + "]");
    }
}

/// Draws jobs 1..n in id order; for each job p is drawn before d.
[[nodiscard]] inline Instance generate_instance(const GenSpec& spec, std::string name = "generated") {
    validate(spec);
    Rng rng(spec.seed);
    std::vector<Job> jobs;
    jobs.reserve(spec.n);
    for (std::size_t i = 0; i < spec.n; ++i) {
        const Time p = rng.between(spec.p_min, spec.p_max);
        const Time d = rng.between(spec.d_min, spec.d_max);
        jobs.push_back(Job{static_cast<JobId>(i + 1), p, d});
    }
    return Instance(std::move(name), std::move(jobs));
}

/// Seed used for the k-th (1-based) instance of a suite: derive_seed(seed, k).
[[nodiscard]] constexpr std::uint64_t suite_seed(std::uint64_t seed, std::uint64_t k) noexcept {
    return derive_seed(seed, k);
}

/// `count` instances named "problem-1" .. "problem-<count>".
[[nodiscard]] inline std::vector<Instance> generate_suite(std::size_t count, const GenSpec& spec) {
    if (count < 1) {
        throw ValidationError("generator: suite count must be >= 1");
    }
    validate(spec);
    std::vector<Instance> suite;
    suite.reserve(count);
    for (std::size_t k = 1; k <= count; ++k) {
        GenSpec one = spec;
        one.seed = suite_seed(spec.seed, k);
        suite.push_back(generate_instance(one, "problem-" + std::to_string(k)));
    }
    return suite;
}

} // namespace smtt
