#pragma once

/// @file verify.hpp
/// @brief Self-checks run by `smtt verify`.

#include <functional>
#include <string>
#include <vector>

#include "smtt/core.hpp"
#include "smtt/evolver.hpp"
#include "smtt/generator.hpp"
#include "smtt/harness.hpp"
#include "smtt/oracle.hpp"

namespace smtt {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

namespace detail {

inline CheckResult check_p1_optimum() {
    const Instance p1 = builtin_p1();
    const Sequence reported{3, 9, 2, 1, 7, 8, 5, 10, 6, 4};
    const Time reported_total = total_tardiness(p1, reported);
    const ExactResult brute = brute_force(p1);
    const ExactResult dp = subset_dp(p1);
    const bool ok = reported_total == kP1Optimum && brute.optimum == kP1Optimum &&
                    dp.optimum == kP1Optimum;
    return {"P1 optimum = 23", ok,
            "reported sequence " + std::to_string(reported_total) + ", enumeration " + std::to_string(brute.optimum) +
                ", subset DP " + std::to_string(dp.optimum)};
}

inline CheckResult check_cross_oracle() {
    GenSpec spec;
    spec.n = 9;
    spec.seed = 2024;
    const auto suite = generate_suite(50, spec);
    std::size_t agree = 0;
    for (const auto& instance : suite) {
        agree += brute_force(instance).optimum == subset_dp(instance).optimum ? 1 : 0;
    }
    return {"dp vs brute on 50 random n=9", agree == suite.size(),
            std::to_string(agree) + "/" + std::to_string(suite.size()) + " agree"};
}

inline CheckResult check_edd_zero() {
    GenSpec spec;
    spec.seed = 77;
    const auto suite = generate_suite(200, spec);
    std::size_t zero = 0;
    std::size_t violations = 0;
    for (const auto& instance : suite) {
        if (subset_dp(instance).optimum == 0) {
            ++zero;
            violations += total_tardiness(instance, edd_sequence(instance)) != 0 ? 1 : 0;
        }
    }
    return {"EDD zero tardiness on 200 random n=10", violations == 0,
            std::to_string(zero) + " zero-optimum instances, " + std::to_string(violations) + " violations"};
}

inline CheckResult check_seed_determinism() {
    EaParams params;
    params.population_size = 30;
    params.seed = 12345;
    params.max_stall = kNoLimit;
    params.time_limit = kNoLimit;
    params.max_generations = 300;
    params.convergence = 0.0;
    params.mutation_rate = 0.3;
    GenSpec spec;
    spec.n = 12;
    spec.seed = 5;
    const Instance instance = generate_instance(spec);
    const EaResult a = solve(instance, params);
    const EaResult b = solve(instance, params);
    const bool ok = a.best == b.best && a.best_value == b.best_value && a.generations == b.generations &&
                    a.stop_reason == b.stop_reason && a.seed_used == b.seed_used;
    return {"seed determinism", ok, "best " + std::to_string(a.best_value) + " after " +
                                        std::to_string(a.generations) + " generations"};
}

inline CheckResult check_sweep_determinism() {
    SweepSpec spec;
    spec.populations = {20, 10};
    spec.mutation_rates = {0.5, 0.01};
    spec.convergences = {0.0001};
    spec.seeds_per_cell = 2;
    spec.time_limit = kNoLimit;
    spec.max_stall = kNoLimit;
    spec.max_generations = 100;
    spec.master_seed = 9;
    GenSpec gen;
    gen.seed = 3;
    spec.instances = generate_suite(3, gen);
    const auto a = run_sweep(spec);
    const auto b = run_sweep(spec);
    bool ok = a.size() == b.size();
    for (std::size_t i = 0; ok && i < a.size(); ++i) {
        ok = a[i].best_value == b[i].best_value && a[i].status == b[i].status && a[i].seed == b[i].seed;
    }
    return {"sweep determinism", ok, std::to_string(a.size()) + " records compared"};
}

} // namespace detail

using Check = std::function<CheckResult()>;

[[nodiscard]] inline std::vector<Check> builtin_checks() {
    return {detail::check_p1_optimum, detail::check_cross_oracle, detail::check_edd_zero,
            detail::check_seed_determinism, detail::check_sweep_determinism};
}

} // namespace smtt
