#pragma once

/// @file oracle.hpp
/// @brief Exact solvers used as ground truth: complete enumeration and a
/// dynamic program over job subsets.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "smtt/core.hpp"

namespace smtt {

enum class ExactMethod { enumeration, subset_dp };

[[nodiscard]] inline const char* to_string(ExactMethod m) noexcept {
    return m == ExactMethod::enumeration ? "enumeration" : "subset-dp";
}

struct ExactResult {
    Time optimum = 0;
    Sequence witness;
    ExactMethod method = ExactMethod::enumeration;
    std::uint64_t explored = 0; ///< permutations (enumeration) or subset states (DP)
};

inline constexpr std::size_t kBruteForceMaxJobs = 11;
inline constexpr std::size_t kSubsetDpMaxJobs = 20;

/// Evaluates all n! orders lexicographically. The witness is the
/// lexicographically smallest optimal sequence.
[[nodiscard]] inline ExactResult brute_force(const Instance& instance) {
    const std::size_t n = instance.size();
    if (n > kBruteForceMaxJobs) {
        throw LimitError("brute force is limited to n <= " + std::to_string(kBruteForceMaxJobs) + " jobs (got " +
                         std::to_string(n) + "); use the subset DP for up to " + std::to_string(kSubsetDpMaxJobs));
    }
    Sequence seq = identity_sequence(n);
    ExactResult result{std::numeric_limits<Time>::max(), seq, ExactMethod::enumeration, 0};
    do {
        ++result.explored;
        const Time total = total_tardiness_unchecked(instance, seq);
        if (total < result.optimum) { // strict: first minimizer in lexicographic order is kept
            result.optimum = total;
            result.witness = seq;
        }
    } while (std::next_permutation(seq.begin(), seq.end()));
    return result;
}

/// f(S) = min_{j in S} f(S \ {j}) + max(0, P(S) - d_j), f(empty) = 0, where
/// P(S) is the total processing time of S and j is the job scheduled last
/// among S. Ties pick the smallest job id as the last job.
[[nodiscard]] inline ExactResult subset_dp(const Instance& instance) {
    const std::size_t n = instance.size();
    if (n > kSubsetDpMaxJobs) {
        throw LimitError("subset DP is limited to n <= " + std::to_string(kSubsetDpMaxJobs) + " jobs (got " +
                         std::to_string(n) + ")");
    }
    const auto jobs = instance.jobs();
    const std::size_t states = std::size_t{1} << n;

    std::vector<Time> best(states, std::numeric_limits<Time>::max());
    std::vector<Time> load(states, 0);
    std::vector<std::uint8_t> last(states, 0);
    best[0] = 0;

    for (std::size_t mask = 1; mask < states; ++mask) {
        const auto low = static_cast<std::size_t>(std::countr_zero(mask));
        load[mask] = load[mask & (mask - 1)] + jobs[low].p;
        for (std::size_t bits = mask; bits != 0; bits &= bits - 1) {
            const auto j = static_cast<std::size_t>(std::countr_zero(bits));
            const Time value = best[mask ^ (std::size_t{1} << j)] + std::max<Time>(0, load[mask] - jobs[j].d);
            if (value < best[mask]) {
                best[mask] = value;
                last[mask] = static_cast<std::uint8_t>(j);
            }
        }
    }

    ExactResult result{best[states - 1], Sequence(n), ExactMethod::subset_dp, states};
    std::size_t mask = states - 1;
    for (std::size_t pos = n; pos-- > 0;) {
        const std::size_t j = last[mask];
        result.witness[pos] = static_cast<JobId>(j + 1);
        mask ^= std::size_t{1} << j;
    }
    return result;
}

[[nodiscard]] inline ExactResult solve_exact(const Instance& instance, ExactMethod method) {
    return method == ExactMethod::enumeration ? brute_force(instance) : subset_dp(instance);
}

} // namespace smtt
