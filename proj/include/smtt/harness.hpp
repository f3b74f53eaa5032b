#pragma once

/// @file harness.hpp
/// @brief Parameter-grid sweeps: convergence x population x mutation rate x
/// instance x replicate, with every run classified against a known optimum.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <tuple>
#include <vector>

#include "smtt/core.hpp"
#include "smtt/evolver.hpp"
#include "smtt/oracle.hpp"
#include "smtt/rng.hpp"

namespace smtt {

enum class Status { OPT, NA, UNKNOWN };

[[nodiscard]] inline const char* to_string(Status s) noexcept {
    switch (s) {
    case Status::OPT:
        return "OPT";
    case Status::NA:
        return "NA";
    case Status::UNKNOWN:
        return "UNKNOWN";
    }
    return "UNKNOWN";
}

[[nodiscard]] inline std::optional<Status> status_from_string(std::string_view s) noexcept {
    if (s == "OPT") {
        return Status::OPT;
    }
    if (s == "NA") {
        return Status::NA;
    }
    if (s == "UNKNOWN") {
        return Status::UNKNOWN;
    }
    return std::nullopt;
}

/// OPT when the run matched the optimum, NA when it fell short. A value
/// below the optimum means the oracle or the evaluator is wrong, so it throws.
[[nodiscard]] inline Status classify(Time best, Time optimum) {
    if (optimum < 0) {
        throw ValidationError("classify: optimum must be >= 0, got " + std::to_string(optimum));
    }
    if (best < optimum) {
        throw ConsistencyError("classify: run reported best " + std::to_string(best) +
                               " below the known optimum " + std::to_string(optimum));
    }
    return best == optimum ? Status::OPT : Status::NA;
}

struct SweepSpec {
    std::vector<std::size_t> populations{100, 50, 25, 10};
    std::vector<double> mutation_rates{0.75, 0.075, 0.0075};
    std::vector<double> convergences{0.0001, 0.1};
    std::size_t seeds_per_cell = 5;
    double time_limit = 45.0;
    double max_stall = 30.0;
    std::optional<std::uint64_t> max_generations;
    double crossover_rate = 0.9;
    std::uint64_t master_seed = 0;
    std::size_t concurrency = 1; ///< keep at 1 when timings matter
    std::vector<Instance> instances;
    std::map<std::string, Time> known_optima; ///< overrides computed optima by instance name
};

inline void validate(const SweepSpec& spec) {
    if (spec.populations.empty() || spec.mutation_rates.empty() || spec.convergences.empty()) {
        throw ValidationError("sweep: populations, mutation_rates and convergences must be non-empty");
    }
    if (spec.instances.empty()) {
        throw ValidationError("sweep: no instances");
    }
    if (spec.seeds_per_cell < 1) {
        throw ValidationError("sweep: seeds_per_cell must be >= 1");
    }
    if (spec.concurrency < 1) {
        throw ValidationError("sweep: concurrency must be >= 1");
    }
    for (std::size_t pop : spec.populations) {
        for (double mut : spec.mutation_rates) {
            for (double conv : spec.convergences) {
                EaParams p;
                p.population_size = pop;
                p.mutation_rate = mut;
                p.convergence = conv;
                p.time_limit = spec.time_limit;
                p.max_stall = spec.max_stall;
                p.crossover_rate = spec.crossover_rate;
                validate(p);
            }
        }
    }
}

struct RunRecord {
    std::string instance_name;
    double convergence = 0.0;
    std::size_t population_size = 0;
    double mutation_rate = 0.0;
    std::uint64_t seed = 0;
    Time best_value = 0;
    double time_to_best = 0.0;
    double wall_time = 0.0;
    StopReason stop_reason = StopReason::converged;
    Status status = Status::UNKNOWN;
};

/// Grid coordinates of a record. Orders like the published tables:
/// convergence ascending, then population and mutation rate descending.
struct CellKey {
    double convergence = 0.0;
    std::size_t population_size = 0;
    double mutation_rate = 0.0;

    friend bool operator==(const CellKey&, const CellKey&) = default;
    friend bool operator<(const CellKey& a, const CellKey& b) {
        return std::tuple(a.convergence, b.population_size, b.mutation_rate) <
               std::tuple(b.convergence, a.population_size, a.mutation_rate);
    }
};

[[nodiscard]] inline CellKey cell_of(const RunRecord& r) noexcept {
    return CellKey{r.convergence, r.population_size, r.mutation_rate};
}

using WarningSink = std::function<void(const std::string&)>;

/// Reference optimum per instance: the supplied value when present, else
/// subset DP for n <= 20, else none. Disagreement between a supplied and a
/// computed value is reported through `warn`.
[[nodiscard]] inline std::vector<std::optional<Time>> reference_optima(const SweepSpec& spec,
                                                                        const WarningSink& warn = {}) {
    std::vector<std::optional<Time>> optima;
    optima.reserve(spec.instances.size());
    for (const auto& instance : spec.instances) {
        std::optional<Time> computed;
        if (instance.size() <= kSubsetDpMaxJobs) {
            computed = subset_dp(instance).optimum;
        }
        const auto supplied = spec.known_optima.find(instance.name());
        if (supplied != spec.known_optima.end()) {
            if (computed && *computed != supplied->second && warn) {
                warn("instance '" + instance.name() + "': supplied optimum " + std::to_string(supplied->second) +
                     " differs from computed optimum " + std::to_string(*computed) + "; using the supplied value");
            }
            optima.emplace_back(supplied->second);
        } else {
            if (!computed && warn) {
                warn("instance '" + instance.name() + "' has " + std::to_string(instance.size()) +
                     " jobs and no supplied optimum; its records are UNKNOWN");
            }
            optima.push_back(computed);
        }
    }
    return optima;
}

/// Seed of one run: derive_seed(master_seed, cell_index, instance_index,
/// replicate), where cell_index = (ci * |populations| + pi) * |mutation_rates| + mi
/// over the spec's list order and instance_index follows the instance list.
[[nodiscard]] constexpr std::uint64_t run_seed(std::uint64_t master, std::size_t cell_index, std::size_t instance_index,
                                               std::size_t replicate) noexcept {
    return derive_seed(master, cell_index, instance_index, replicate);
}

/// Runs every grid cell on every instance `seeds_per_cell` times. Records are
/// returned sorted by (cell key, instance list position, replicate), so the
/// output does not depend on `concurrency`.
[[nodiscard]] inline std::vector<RunRecord> run_sweep(const SweepSpec& spec, const WarningSink& warn = {}) {
    validate(spec);
    const auto optima = reference_optima(spec, warn);

    struct Task {
        CellKey key;
        std::size_t instance = 0;
        std::size_t replicate = 0;
        std::uint64_t seed = 0;
    };
    std::vector<Task> tasks;
    const std::size_t n_pop = spec.populations.size();
    const std::size_t n_mut = spec.mutation_rates.size();
    for (std::size_t ci = 0; ci < spec.convergences.size(); ++ci) {
        for (std::size_t pi = 0; pi < n_pop; ++pi) {
            for (std::size_t mi = 0; mi < n_mut; ++mi) {
                const std::size_t cell_index = (ci * n_pop + pi) * n_mut + mi;
                const CellKey key{spec.convergences[ci], spec.populations[pi], spec.mutation_rates[mi]};
                for (std::size_t ii = 0; ii < spec.instances.size(); ++ii) {
                    for (std::size_t rep = 0; rep < spec.seeds_per_cell; ++rep) {
                        tasks.push_back(Task{key, ii, rep, run_seed(spec.master_seed, cell_index, ii, rep)});
                    }
                }
            }
        }
    }
    std::stable_sort(tasks.begin(), tasks.end(), [](const Task& a, const Task& b) {
        if (a.key < b.key || b.key < a.key) {
            return a.key < b.key;
        }
        return std::tie(a.instance, a.replicate) < std::tie(b.instance, b.replicate);
    });

    std::vector<RunRecord> records(tasks.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        for (;;) {
            const std::size_t t = next.fetch_add(1);
            if (t >= tasks.size()) {
                return;
            }
            try {
                const Task& task = tasks[t];
                const Instance& instance = spec.instances[task.instance];
                EaParams params;
                params.population_size = task.key.population_size;
                params.mutation_rate = task.key.mutation_rate;
                params.convergence = task.key.convergence;
                params.seed = task.seed;
                params.time_limit = spec.time_limit;
                params.max_stall = spec.max_stall;
                params.max_generations = spec.max_generations;
                params.crossover_rate = spec.crossover_rate;
                const EaResult result = solve(instance, params);

                RunRecord& rec = records[t];
                rec.instance_name = instance.name();
                rec.convergence = task.key.convergence;
                rec.population_size = task.key.population_size;
                rec.mutation_rate = task.key.mutation_rate;
                rec.seed = task.seed;
                rec.best_value = result.best_value;
                rec.time_to_best = result.time_to_best;
                rec.wall_time = result.wall_time;
                rec.stop_reason = result.stop_reason;
                const auto& optimum = optima[task.instance];
                rec.status = optimum ? classify(result.best_value, *optimum) : Status::UNKNOWN;
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
                next.store(tasks.size());
                return;
            }
        }
    };

    const std::size_t threads = std::min(spec.concurrency, tasks.size());
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (std::size_t i = 0; i < threads; ++i) {
            pool.emplace_back(worker);
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return records;
}

// ---------------------------------------------------------------------------
// Aggregation

struct CellStats {
    std::size_t runs = 0;
    std::size_t known = 0; ///< runs with a reference optimum (OPT or NA)
    std::size_t hits = 0;  ///< OPT runs
    std::optional<double> median_time_to_best; ///< over OPT runs; empty reads as NA
    std::optional<double> hit_rate;            ///< hits / known; empty when nothing is known
};

struct GridSummary {
    std::vector<std::string> instances; ///< first-appearance order
    std::vector<CellKey> cells;         ///< sorted
    std::map<CellKey, std::map<std::string, CellStats>> per_instance;
    std::map<CellKey, CellStats> per_cell;
};

[[nodiscard]] inline std::optional<double> median(std::vector<double> values) {
    if (values.empty()) {
        return std::nullopt;
    }
    std::sort(values.begin(), values.end());
    const std::size_t mid = values.size() / 2;
    if (values.size() % 2 == 1) {
        return values[mid];
    }
    return (values[mid - 1] + values[mid]) / 2.0;
}

namespace detail {

struct StatsBuilder {
    std::size_t runs = 0;
    std::size_t known = 0;
    std::vector<double> opt_times;

    void add(const RunRecord& r) {
        ++runs;
        if (r.status != Status::UNKNOWN) {
            ++known;
        }
        if (r.status == Status::OPT) {
            opt_times.push_back(r.time_to_best);
        }
    }

    [[nodiscard]] CellStats build() const {
        CellStats s;
        s.runs = runs;
        s.known = known;
        s.hits = opt_times.size();
        s.median_time_to_best = median(opt_times);
        if (known > 0) {
            s.hit_rate = static_cast<double>(s.hits) / static_cast<double>(known);
        }
        return s;
    }
};

} // namespace detail

/// Per cell and instance: median time-to-best over OPT runs and the OPT
/// fraction. Per cell: the same over all of the cell's runs.
[[nodiscard]] inline GridSummary aggregate(std::span<const RunRecord> records) {
    if (records.empty()) {
        throw ValidationError("aggregate: no records");
    }
    std::map<CellKey, std::map<std::string, detail::StatsBuilder>> per_instance;
    std::map<CellKey, detail::StatsBuilder> per_cell;
    GridSummary summary;
    for (const auto& r : records) {
        if (std::find(summary.instances.begin(), summary.instances.end(), r.instance_name) == summary.instances.end()) {
            summary.instances.push_back(r.instance_name);
        }
        per_instance[cell_of(r)][r.instance_name].add(r);
        per_cell[cell_of(r)].add(r);
    }
    for (const auto& [key, by_name] : per_instance) {
        summary.cells.push_back(key);
        for (const auto& [name, builder] : by_name) {
            summary.per_instance[key][name] = builder.build();
        }
        summary.per_cell[key] = per_cell[key].build();
    }
    return summary;
}

} // namespace smtt
