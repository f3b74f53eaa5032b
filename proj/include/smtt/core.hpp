#pragma once

/// @file core.hpp
/// @brief Instance model and schedule evaluation for the single-machine
/// total-tardiness problem (1||sum Tj).
///
/// Jobs run back to back from time zero with no idle time and no preemption.
/// A job's tardiness is max(0, C - d) where C is its completion time and d its
/// due date; the objective is the sum over all jobs.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace smtt {

/// Integer time units (processing times, due dates, completion times).
using Time = std::int64_t;

/// 1-based job identifier.
using JobId = int;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed input: bad instance data, invalid permutation, bad parameters.
class ValidationError : public Error {
  public:
    using Error::Error;
};

/// A request exceeds a documented size bound (e.g. oracle job-count limits).
class LimitError : public Error {
  public:
    using Error::Error;
};

/// An internal invariant was violated; signals a defect, never bad input.
class ConsistencyError : public Error {
  public:
    using Error::Error;
};

struct Job {
    JobId id = 1;
    Time p = 0; ///< processing time
    Time d = 0; ///< due date

    friend bool operator==(const Job&, const Job&) = default;
};

/// A named, validated set of jobs with ids exactly 1..n.
///
/// Jobs are stored sorted by id so that `job(id)` is a direct index.
class Instance {
  public:
    Instance(std::string name, std::vector<Job> jobs) : name_(std::move(name)), jobs_(std::move(jobs)) {
        if (jobs_.empty()) {
            throw ValidationError("instance '" + name_ + "' has no jobs");
        }
        const auto n = static_cast<JobId>(jobs_.size());
        std::vector<bool> seen(jobs_.size() + 1, false);
        for (const auto& job : jobs_) {
            if (job.id < 1 || job.id > n) {
                throw ValidationError("job id " + std::to_string(job.id) + " out of range 1.." +
                                      std::to_string(n));
            }
            if (seen[static_cast<std::size_t>(job.id)]) {
                throw ValidationError("duplicate job id " + std::to_string(job.id));
            }
            seen[static_cast<std::size_t>(job.id)] = true;
            if (job.p < 0) {
                throw ValidationError("job " + std::to_string(job.id) + " has negative processing time");
            }
            if (job.d < 0) {
                throw ValidationError("job " + std::to_string(job.id) + " has negative due date");
            }
        }
        std::sort(jobs_.begin(), jobs_.end(), [](const Job& a, const Job& b) { return a.id < b.id; });
    }

    /// Builds jobs 1..n from parallel processing-time and due-date arrays.
    static Instance from_arrays(std::string name, std::span<const Time> p, std::span<const Time> d) {
        if (p.size() != d.size()) {
            throw ValidationError("processing-time and due-date arrays differ in length");
        }
        std::vector<Job> jobs;
        jobs.reserve(p.size());
        for (std::size_t i = 0; i < p.size(); ++i) {
            jobs.push_back(Job{static_cast<JobId>(i + 1), p[i], d[i]});
        }
        return Instance(std::move(name), std::move(jobs));
    }

    [[nodiscard]] const std::string& name() const noexcept { return name_; }
    [[nodiscard]] std::span<const Job> jobs() const noexcept { return jobs_; }
    [[nodiscard]] std::size_t size() const noexcept { return jobs_.size(); }
    [[nodiscard]] const Job& job(JobId id) const { return jobs_.at(static_cast<std::size_t>(id - 1)); }

    [[nodiscard]] Time total_processing() const noexcept {
        return std::accumulate(jobs_.begin(), jobs_.end(), Time{0},
                               [](Time acc, const Job& j) { return acc + j.p; });
    }

    friend bool operator==(const Instance&, const Instance&) = default;

  private:
    std::string name_;
    std::vector<Job> jobs_;
};

/// Processing order; position k holds the id of the k-th job on the machine.
using Sequence = std::vector<JobId>;

/// Throws ValidationError naming the offending id unless `seq` is a
/// permutation of 1..n.
inline void require_permutation(std::span<const JobId> seq, std::size_t n) {
    if (seq.size() != n) {
        throw ValidationError("sequence has " + std::to_string(seq.size()) + " entries, expected " +
                              std::to_string(n));
    }
    std::vector<bool> seen(n + 1, false);
    for (JobId id : seq) {
        if (id < 1 || static_cast<std::size_t>(id) > n) {
            throw ValidationError("sequence contains out-of-range job id " + std::to_string(id));
        }
        if (seen[static_cast<std::size_t>(id)]) {
            throw ValidationError("sequence contains duplicate job id " + std::to_string(id));
        }
        seen[static_cast<std::size_t>(id)] = true;
    }
}

[[nodiscard]] inline bool is_permutation_of_ids(std::span<const JobId> seq, std::size_t n) noexcept {
    if (seq.size() != n) {
        return false;
    }
    std::vector<bool> seen(n + 1, false);
    for (JobId id : seq) {
        if (id < 1 || static_cast<std::size_t>(id) > n || seen[static_cast<std::size_t>(id)]) {
            return false;
        }
        seen[static_cast<std::size_t>(id)] = true;
    }
    return true;
}

/// Position-aligned schedule metrics: entry k describes the k-th scheduled job.
struct Evaluation {
    std::vector<Time> completion;
    std::vector<Time> tardiness;
    Time total = 0;
};

/// Completion times by running sum, tardiness clipped at zero, total summed.
[[nodiscard]] inline Evaluation evaluate(const Instance& instance, std::span<const JobId> seq) {
    require_permutation(seq, instance.size());
    Evaluation ev;
    ev.completion.reserve(seq.size());
    ev.tardiness.reserve(seq.size());
    Time clock = 0;
    for (JobId id : seq) {
        const Job& job = instance.job(id);
        clock += job.p;
        const Time late = std::max<Time>(0, clock - job.d);
        ev.completion.push_back(clock);
        ev.tardiness.push_back(late);
        ev.total += late;
    }
    return ev;
}

/// Total tardiness without the validity check or per-position vectors.
/// Callers must guarantee `seq` is a permutation of the instance's ids.
[[nodiscard]] inline Time total_tardiness_unchecked(const Instance& instance, std::span<const JobId> seq) noexcept {
    const auto jobs = instance.jobs();
    Time clock = 0;
    Time total = 0;
    for (JobId id : seq) {
        const Job& job = jobs[static_cast<std::size_t>(id - 1)];
        clock += job.p;
        total += std::max<Time>(0, clock - job.d);
    }
    return total;
}

[[nodiscard]] inline Time total_tardiness(const Instance& instance, std::span<const JobId> seq) {
    require_permutation(seq, instance.size());
    return total_tardiness_unchecked(instance, seq);
}

/// Earliest-due-date order; ties broken by ascending id.
[[nodiscard]] inline Sequence edd_sequence(const Instance& instance) {
    Sequence seq(instance.size());
    std::iota(seq.begin(), seq.end(), 1);
    std::stable_sort(seq.begin(), seq.end(),
                     [&](JobId a, JobId b) { return instance.job(a).d < instance.job(b).d; });
    return seq;
}

[[nodiscard]] inline Sequence identity_sequence(std::size_t n) {
    Sequence seq(n);
    std::iota(seq.begin(), seq.end(), 1);
    return seq;
}

/// The ten-job worked instance shipped as the built-in "p1".
[[nodiscard]] inline Instance builtin_p1() {
    constexpr Time p[] = {11, 19, 14, 10, 20, 19, 19, 16, 11, 14};
    constexpr Time d[] = {57, 58, 85, 148, 100, 135, 75, 94, 73, 125};
    return Instance::from_arrays("p1", p, d);
}

/// Best total tardiness reported for problem 1 on the worked instance.
inline constexpr Time kP1Optimum = 23;

} // namespace smtt
