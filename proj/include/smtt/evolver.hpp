#pragma once

/// @file evolver.hpp
/// @brief Generational evolutionary solver over job permutations.
///
/// Each run keeps `population_size` permutations. The initial population is
/// the EDD order plus uniformly shuffled permutations. Every generation keeps
/// one elite and fills the rest with children bred as follows: two size-2
/// tournaments pick the parents, order crossover (OX1) combines them with
/// probability `crossover_rate` (otherwise the better parent is copied), and
/// with probability `mutation_rate` the child gets one random transposition.
///
/// A run stops when the population has converged (see convergence_check),
/// when the incumbent has not strictly improved for `max_stall` seconds, when
/// `time_limit` seconds have elapsed, or after `max_generations` generations.
/// With a fixed seed and the two wall-clock stops disabled the run is fully
/// deterministic.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "smtt/core.hpp"
#include "smtt/rng.hpp"

namespace smtt {

inline constexpr double kNoLimit = std::numeric_limits<double>::infinity();

struct EaParams {
    std::size_t population_size = 100;
    double mutation_rate = 0.075;
    double convergence = 0.0001;
    std::optional<std::uint64_t> seed; ///< empty: draw a fresh seed per run
    double max_stall = 30.0;           ///< seconds without strict improvement
    double time_limit = 45.0;          ///< seconds
    std::optional<std::uint64_t> max_generations;
    double crossover_rate = 0.9;
};

inline void validate(const EaParams& params) {
    if (params.population_size < 2) {
        throw ValidationError("population_size must be >= 2 (got " + std::to_string(params.population_size) + ")");
    }
    auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; }; // false for NaN
    if (!in_unit(params.mutation_rate)) {
        throw ValidationError("mutation_rate must lie in [0, 1]");
    }
    if (!in_unit(params.crossover_rate)) {
        throw ValidationError("crossover_rate must lie in [0, 1]");
    }
    if (!(params.convergence >= 0.0)) {
        throw ValidationError("convergence must be >= 0");
    }
    if (!(params.max_stall > 0.0)) {
        throw ValidationError("max_stall must be > 0 seconds");
    }
    if (!(params.time_limit >= 0.0)) {
        throw ValidationError("time_limit must be >= 0 seconds");
    }
}

enum class StopReason { converged, stalled, time_limit, generation_cap };

[[nodiscard]] inline const char* to_string(StopReason r) noexcept {
    switch (r) {
    case StopReason::converged:
        return "converged";
    case StopReason::stalled:
        return "stalled";
    case StopReason::time_limit:
        return "time_limit";
    case StopReason::generation_cap:
        return "generation_cap";
    }
    return "unknown";
}

[[nodiscard]] inline std::optional<StopReason> stop_reason_from_string(std::string_view s) noexcept {
    for (auto r : {StopReason::converged, StopReason::stalled, StopReason::time_limit, StopReason::generation_cap}) {
        if (s == to_string(r)) {
            return r;
        }
    }
    return std::nullopt;
}

struct EaResult {
    Sequence best;
    Time best_value = 0;
    std::uint64_t generations = 0;
    double wall_time = 0.0;    ///< seconds
    double time_to_best = 0.0; ///< seconds at the last strict improvement
    StopReason stop_reason = StopReason::converged;
    std::uint64_t seed_used = 0;
};

/// True when the fitness values bounding the best 99% of the population are
/// within `epsilon` of the best, relative to 1 + |best|.
///
/// With values sorted ascending, b is the first and q the one at 1-based rank
/// ceil(0.99 N); the test is (q - b) / (1 + |b|) <= epsilon. For N <= 100 the
/// rank is N, so the whole population must tighten.
[[nodiscard]] inline bool convergence_check(std::span<const Time> fitness, double epsilon) {
    if (fitness.empty()) {
        throw ValidationError("convergence_check needs a non-empty population");
    }
    std::vector<Time> sorted(fitness.begin(), fitness.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t rank = (99 * sorted.size() + 99) / 100; // ceil(0.99 N)
    const Time b = sorted.front();
    const Time q = sorted[rank - 1];
    const double spread = static_cast<double>(q - b) / (1.0 + std::abs(static_cast<double>(b)));
    return spread <= epsilon;
}

/// Order crossover (OX1). The child keeps parent_a's genes at positions
/// [cut_i, cut_j]; the other positions are filled cyclically from cut_j + 1
/// with parent_b's genes, also scanned cyclically from cut_j + 1, skipping
/// genes already placed.
[[nodiscard]] inline Sequence order_crossover(std::span<const JobId> parent_a, std::span<const JobId> parent_b,
                                              std::size_t cut_i, std::size_t cut_j) {
    const std::size_t n = parent_a.size();
    if (parent_b.size() != n) {
        throw ValidationError("order_crossover: parents differ in length");
    }
    if (cut_i > cut_j || cut_j >= n) {
        throw ValidationError("order_crossover: need 0 <= cut_i <= cut_j < n, got " + std::to_string(cut_i) +
                              ".." + std::to_string(cut_j) + " with n=" + std::to_string(n));
    }
    Sequence child(n);
    std::vector<bool> placed(n + 1, false);
    for (std::size_t k = cut_i; k <= cut_j; ++k) {
        child[k] = parent_a[k];
        placed[static_cast<std::size_t>(parent_a[k])] = true;
    }
    std::size_t write = (cut_j + 1) % n;
    for (std::size_t s = 0; s < n; ++s) {
        const JobId gene = parent_b[(cut_j + 1 + s) % n];
        if (placed[static_cast<std::size_t>(gene)]) {
            continue;
        }
        child[write] = gene;
        placed[static_cast<std::size_t>(gene)] = true;
        write = (write + 1) % n;
    }
    return child;
}

[[nodiscard]] inline Sequence swap_positions(Sequence seq, std::size_t i, std::size_t j) {
    if (i >= seq.size() || j >= seq.size()) {
        throw ValidationError("swap_positions: index out of range");
    }
    std::swap(seq[i], seq[j]);
    return seq;
}

/// One transposition of two distinct uniformly chosen positions; identity for n < 2.
[[nodiscard]] inline Sequence mutate_swap(Sequence seq, Rng& rng) {
    const std::size_t n = seq.size();
    if (n < 2) {
        return seq;
    }
    const auto i = static_cast<std::size_t>(rng.below(n));
    auto j = static_cast<std::size_t>(rng.below(n - 1));
    if (j >= i) {
        ++j;
    }
    std::swap(seq[i], seq[j]);
    return seq;
}

/// Uniform random permutation of 1..n by Fisher-Yates.
[[nodiscard]] inline Sequence random_permutation(std::size_t n, Rng& rng) {
    Sequence seq = identity_sequence(n);
    for (std::size_t k = n; k > 1; --k) {
        const auto r = static_cast<std::size_t>(rng.below(k));
        std::swap(seq[k - 1], seq[r]);
    }
    return seq;
}

/// Snapshot handed to an observer after each generation is evaluated
/// (generation 0 is the initial population).
struct GenerationView {
    std::uint64_t generation = 0;
    std::span<const Sequence> population;
    std::span<const Time> fitness;
    Time best_value = 0;
};

using GenerationObserver = std::function<void(const GenerationView&)>;

namespace detail {

/// Index of the fitter individual; the earlier-created one wins ties.
[[nodiscard]] inline std::size_t fitter(std::span<const Time> fitness, std::size_t a, std::size_t b) noexcept {
    if (fitness[b] < fitness[a] || (fitness[b] == fitness[a] && b < a)) {
        return b;
    }
    return a;
}

[[nodiscard]] inline std::size_t tournament(std::span<const Time> fitness, Rng& rng) {
    const auto a = static_cast<std::size_t>(rng.below(fitness.size()));
    const auto b = static_cast<std::size_t>(rng.below(fitness.size()));
    return fitter(fitness, a, b);
}

} // namespace detail

[[nodiscard]] inline EaResult solve(const Instance& instance, const EaParams& params,
                                    const GenerationObserver& observer = {}) {
    validate(params);
    using Clock = std::chrono::steady_clock;
    const auto started = Clock::now();
    auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - started).count(); };

    EaResult result;
    result.seed_used = params.seed ? *params.seed : fresh_seed();
    const std::size_t n = instance.size();

    if (n == 1) {
        result.best = {1};
        result.best_value = total_tardiness_unchecked(instance, result.best);
        result.stop_reason = StopReason::converged;
        result.wall_time = elapsed();
        return result;
    }

    Rng rng(result.seed_used);
    const std::size_t size = params.population_size;
    std::vector<Sequence> population;
    population.reserve(size);
    population.push_back(edd_sequence(instance));
    while (population.size() < size) {
        population.push_back(random_permutation(n, rng));
    }
    std::vector<Time> fitness(size);
    std::vector<Sequence> next(size);

    auto evaluate_all = [&] {
        for (std::size_t i = 0; i < size; ++i) {
            fitness[i] = total_tardiness_unchecked(instance, population[i]);
        }
    };
    auto best_index = [&] {
        return static_cast<std::size_t>(std::min_element(fitness.begin(), fitness.end()) - fitness.begin());
    };

    evaluate_all();
    std::size_t elite = best_index();
    result.best = population[elite];
    result.best_value = fitness[elite];
    double last_improvement = elapsed();
    result.time_to_best = last_improvement;

    for (;;) {
        if (observer) {
            observer(GenerationView{result.generations, population, fitness, result.best_value});
        }
        const double now = elapsed();
        if (convergence_check(fitness, params.convergence)) {
            result.stop_reason = StopReason::converged;
            break;
        }
        if (now >= params.time_limit) {
            result.stop_reason = StopReason::time_limit;
            break;
        }
        if (now - last_improvement >= params.max_stall) {
            result.stop_reason = StopReason::stalled;
            break;
        }
        if (params.max_generations && result.generations >= *params.max_generations) {
            result.stop_reason = StopReason::generation_cap;
            break;
        }

        next[0] = population[elite];
        for (std::size_t slot = 1; slot < size; ++slot) {
            const std::size_t a = detail::tournament(fitness, rng);
            const std::size_t b = detail::tournament(fitness, rng);
            Sequence child;
            if (rng.chance(params.crossover_rate)) {
                const auto x = static_cast<std::size_t>(rng.below(n));
                const auto y = static_cast<std::size_t>(rng.below(n));
                child = order_crossover(population[a], population[b], std::min(x, y), std::max(x, y));
            } else {
                child = population[detail::fitter(fitness, a, b)];
            }
            if (rng.chance(params.mutation_rate)) {
                child = mutate_swap(std::move(child), rng);
            }
            next[slot] = std::move(child);
        }
        population.swap(next);
        ++result.generations;

        evaluate_all();
        elite = best_index();
        if (fitness[elite] < result.best_value) {
            result.best = population[elite];
            result.best_value = fitness[elite];
            last_improvement = elapsed();
            result.time_to_best = last_improvement;
        }
    }

    result.wall_time = elapsed();
    return result;
}

} // namespace smtt
