#include <gtest/gtest.h>

#include "smtt/generator.hpp"
#include "smtt/harness.hpp"
#include "smtt/oracle.hpp"
#include "smtt/sweep_io.hpp"

using namespace smtt;

namespace {

SweepSpec small_spec(std::size_t instances) {
    SweepSpec spec;
    spec.populations = {20, 10};
    spec.mutation_rates = {0.5, 0.0075};
    spec.convergences = {0.0001, 0.1};
    spec.seeds_per_cell = 2;
    spec.time_limit = kNoLimit;
    spec.max_stall = kNoLimit;
    spec.max_generations = 60;
    spec.master_seed = 4;
    GenSpec gen;
    gen.seed = 31;
    spec.instances = generate_suite(instances, gen);
    return spec;
}

RunRecord record(const std::string& name, Status status, double time) {
    RunRecord r;
    r.instance_name = name;
    r.convergence = 0.0001;
    r.population_size = 50;
    r.mutation_rate = 0.075;
    r.status = status;
    r.time_to_best = time;
    return r;
}

} // namespace

TEST(Classify, Cases) {
    EXPECT_EQ(classify(23, 23), Status::OPT);
    EXPECT_EQ(classify(25, 23), Status::NA);
    try {
        (void)classify(22, 23);
        FAIL() << "expected ConsistencyError";
    } catch (const ConsistencyError& e) {
        const std::string what = e.what();
        EXPECT_NE(what.find("22"), std::string::npos);
        EXPECT_NE(what.find("23"), std::string::npos);
    }
    EXPECT_THROW((void)classify(1, -1), ValidationError);
}

TEST(SweepSpecDefaults, Grid) {
    const SweepSpec spec;
    EXPECT_EQ(spec.populations, (std::vector<std::size_t>{100, 50, 25, 10}));
    EXPECT_EQ(spec.mutation_rates, (std::vector<double>{0.75, 0.075, 0.0075}));
    EXPECT_EQ(spec.convergences, (std::vector<double>{0.0001, 0.1}));
    EXPECT_EQ(spec.seeds_per_cell, 5u);
}

TEST(Sweep, RecordCountIsTheGridProduct) {
    const SweepSpec spec = small_spec(3);
    const auto records = run_sweep(spec);
    EXPECT_EQ(records.size(), 2u * 2u * 2u * 3u * 2u);
}

TEST(Sweep, DefaultGridCardinality) {
    SweepSpec spec; // default grid: 2 x 4 x 3
    spec.seeds_per_cell = 1;
    spec.time_limit = kNoLimit;
    spec.max_stall = kNoLimit;
    spec.max_generations = 1;
    GenSpec gen;
    spec.instances = generate_suite(20, gen);
    EXPECT_EQ(run_sweep(spec).size(), 480u);
}

TEST(Sweep, RecordsSortedByCellKey) {
    const auto records = run_sweep(small_spec(2));
    for (std::size_t i = 1; i < records.size(); ++i) {
        ASSERT_FALSE(cell_of(records[i]) < cell_of(records[i - 1]));
    }
    EXPECT_DOUBLE_EQ(records.front().convergence, 0.0001);
    EXPECT_EQ(records.front().population_size, 20u);
    EXPECT_DOUBLE_EQ(records.front().mutation_rate, 0.5);
    EXPECT_EQ(records.front().instance_name, "problem-1");
    EXPECT_DOUBLE_EQ(records.back().convergence, 0.1);
    EXPECT_EQ(records.back().population_size, 10u);
}

TEST(Sweep, DeterministicAndConcurrencyIndependent) {
    SweepSpec spec = small_spec(3);
    const auto a = run_sweep(spec);
    spec.concurrency = 4;
    const auto b = run_sweep(spec);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].instance_name, b[i].instance_name);
        EXPECT_EQ(a[i].seed, b[i].seed);
        EXPECT_EQ(a[i].best_value, b[i].best_value);
        EXPECT_EQ(a[i].status, b[i].status);
    }
}

TEST(Sweep, NeverBelowOptimum) {
    const SweepSpec spec = small_spec(4);
    const auto optima = reference_optima(spec);
    for (const auto& r : run_sweep(spec)) {
        const auto it = std::find_if(spec.instances.begin(), spec.instances.end(),
                                     [&](const Instance& i) { return i.name() == r.instance_name; });
        const auto& optimum = optima[static_cast<std::size_t>(it - spec.instances.begin())];
        ASSERT_TRUE(optimum.has_value());
        ASSERT_GE(r.best_value, *optimum);
        ASSERT_EQ(r.status, r.best_value == *optimum ? Status::OPT : Status::NA);
    }
}

TEST(Sweep, SuppliedOptimumOverridesAndWarnsOnMismatch) {
    SweepSpec spec = small_spec(1);
    const Time computed = subset_dp(spec.instances[0]).optimum;
    ASSERT_GT(computed, 0);
    // Below the true optimum: no run can match it, so every record is NA.
    spec.known_optima["problem-1"] = computed - 1;
    std::vector<std::string> warnings;
    const auto records = run_sweep(spec, [&](const std::string& w) { warnings.push_back(w); });
    ASSERT_EQ(warnings.size(), 1u);
    EXPECT_NE(warnings[0].find("differs"), std::string::npos);
    for (const auto& r : records) {
        EXPECT_EQ(r.status, Status::NA);
    }
}

TEST(Sweep, SuppliedOptimumAboveTruthAbortsLoudly) {
    SweepSpec spec = small_spec(1);
    spec.known_optima["problem-1"] = subset_dp(spec.instances[0]).optimum + 1;
    // Some run will reach the true optimum, which is below the supplied one.
    spec.max_generations = 500;
    EXPECT_THROW((void)run_sweep(spec), ConsistencyError);
}

TEST(Sweep, LargeInstanceWithoutOptimumIsUnknown) {
    SweepSpec spec = small_spec(1);
    GenSpec gen;
    gen.n = 21;
    spec.instances = {generate_instance(gen, "big")};
    spec.populations = {10};
    spec.mutation_rates = {0.075};
    spec.convergences = {0.0001};
    spec.max_generations = 5;
    std::vector<std::string> warnings;
    const auto records = run_sweep(spec, [&](const std::string& w) { warnings.push_back(w); });
    ASSERT_EQ(warnings.size(), 1u);
    for (const auto& r : records) {
        EXPECT_EQ(r.status, Status::UNKNOWN);
    }
}

TEST(Sweep, RejectsEmptyGrids) {
    SweepSpec spec = small_spec(1);
    spec.populations.clear();
    EXPECT_THROW((void)run_sweep(spec), ValidationError);
    spec = small_spec(1);
    spec.seeds_per_cell = 0;
    EXPECT_THROW((void)run_sweep(spec), ValidationError);
    spec = small_spec(1);
    spec.populations = {1};
    EXPECT_THROW((void)run_sweep(spec), ValidationError);
}

// aggregate

TEST(Aggregate, SingleOptRecord) {
    const std::vector<RunRecord> recs{record("p", Status::OPT, 1.5)};
    const GridSummary s = aggregate(recs);
    const CellStats& cell = s.per_cell.begin()->second;
    EXPECT_DOUBLE_EQ(*cell.median_time_to_best, 1.5);
    EXPECT_DOUBLE_EQ(*cell.hit_rate, 1.0);
}

TEST(Aggregate, AllNa) {
    const std::vector<RunRecord> recs{record("p", Status::NA, 1.0), record("p", Status::NA, 2.0)};
    const GridSummary s = aggregate(recs);
    const CellStats& cell = s.per_instance.begin()->second.at("p");
    EXPECT_FALSE(cell.median_time_to_best.has_value());
    EXPECT_DOUBLE_EQ(*cell.hit_rate, 0.0);
    EXPECT_NE(grid_markdown(s).find("| NA |"), std::string::npos);
}

TEST(Aggregate, MedianOverOptRunsOnly) {
    const std::vector<RunRecord> recs{record("p", Status::OPT, 1.0), record("p", Status::OPT, 3.0),
                                      record("p", Status::NA, 100.0)};
    const GridSummary s = aggregate(recs);
    const CellStats& cell = s.per_instance.begin()->second.at("p");
    EXPECT_DOUBLE_EQ(*cell.median_time_to_best, 2.0);
    EXPECT_DOUBLE_EQ(*cell.hit_rate, 2.0 / 3.0);
    EXPECT_EQ(cell.runs, 3u);
}

TEST(Aggregate, UnknownHasNoHitRate) {
    const std::vector<RunRecord> recs{record("p", Status::UNKNOWN, 1.0)};
    const CellStats& cell = aggregate(recs).per_cell.begin()->second;
    EXPECT_FALSE(cell.hit_rate.has_value());
}

TEST(Aggregate, EmptyIsRejected) {
    EXPECT_THROW((void)aggregate(std::vector<RunRecord>{}), ValidationError);
}

TEST(Aggregate, CellOrderFollowsTables) {
    const auto records = run_sweep(small_spec(1));
    const GridSummary s = aggregate(records);
    ASSERT_EQ(s.cells.size(), 8u);
    EXPECT_EQ(s.cells[0], (CellKey{0.0001, 20, 0.5}));
    EXPECT_EQ(s.cells[1], (CellKey{0.0001, 20, 0.0075}));
    EXPECT_EQ(s.cells[2], (CellKey{0.0001, 10, 0.5}));
    EXPECT_EQ(s.cells[7], (CellKey{0.1, 10, 0.0075}));
}

TEST(Median, OddAndEven) {
    EXPECT_DOUBLE_EQ(*median({3.0, 1.0, 2.0}), 2.0);
    EXPECT_DOUBLE_EQ(*median({4.0, 1.0, 3.0, 2.0}), 2.5);
    EXPECT_FALSE(median({}).has_value());
}
