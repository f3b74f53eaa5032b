#include <gtest/gtest.h>

#include <random>

#include "smtt/core.hpp"
#include "test_support.hpp"

using namespace smtt;

TEST(Evaluate, KnownSequenceGives23) {
    const Instance p1 = builtin_p1();
    const Evaluation ev = evaluate(p1, Sequence{3, 9, 2, 1, 7, 8, 5, 10, 6, 4});
    EXPECT_EQ(ev.total, 23);
    EXPECT_EQ(total_tardiness(p1, Sequence{3, 9, 2, 1, 7, 8, 5, 10, 6, 4}), 23);
}

TEST(Evaluate, IdentityOrderOnP1) {
    const Evaluation ev = evaluate(builtin_p1(), identity_sequence(10));
    EXPECT_EQ(ev.total, 165);
    const std::vector<Time> tardy{0, 0, 0, 0, 0, 0, 37, 34, 66, 28};
    EXPECT_EQ(ev.tardiness, tardy);
    const std::vector<Time> completion{11, 30, 44, 54, 74, 93, 112, 128, 139, 153};
    EXPECT_EQ(ev.completion, completion);
}

TEST(Evaluate, ReversedOrderOnP1) {
    const Sequence rev{10, 9, 8, 7, 6, 5, 4, 3, 2, 1};
    const Evaluation ev = evaluate(builtin_p1(), rev);
    EXPECT_EQ(ev.total, 218);
    const std::vector<Time> tardy{0, 0, 0, 0, 0, 0, 0, 38, 84, 96};
    EXPECT_EQ(ev.tardiness, tardy);
}

TEST(Evaluate, SingleJob) {
    const Instance one("one", {Job{1, 5, 9}});
    const Evaluation ev = evaluate(one, Sequence{1});
    EXPECT_EQ(ev.completion, std::vector<Time>{5});
    EXPECT_EQ(ev.tardiness, std::vector<Time>{0});
    EXPECT_EQ(ev.total, 0);
}

TEST(Evaluate, LooseDueDatesGiveZero) {
    const Instance loose = Instance::from_arrays("loose", std::vector<Time>{3, 4, 5}, std::vector<Time>{12, 12, 20});
    for (const Sequence& s : {Sequence{1, 2, 3}, Sequence{3, 2, 1}, Sequence{2, 3, 1}}) {
        EXPECT_EQ(total_tardiness(loose, s), 0);
    }
}

TEST(Evaluate, ZeroProcessingTimesAllowed) {
    const Instance inst = Instance::from_arrays("z", std::vector<Time>{0, 3, 0}, std::vector<Time>{0, 1, 0});
    const Evaluation ev = evaluate(inst, Sequence{1, 2, 3});
    EXPECT_EQ(ev.completion, (std::vector<Time>{0, 3, 3}));
    EXPECT_EQ(ev.total, 2 + 3);
}

TEST(Evaluate, RejectsInvalidPermutations) {
    const Instance p1 = builtin_p1();
    try {
        (void)evaluate(p1, Sequence{1, 2, 3, 4, 5, 6, 7, 8, 9, 9});
        FAIL() << "expected ValidationError";
    } catch (const ValidationError& e) {
        EXPECT_NE(std::string(e.what()).find("duplicate job id 9"), std::string::npos) << e.what();
    }
    try {
        (void)evaluate(p1, Sequence{1, 2, 3, 4, 5, 6, 7, 8, 9, 11});
        FAIL() << "expected ValidationError";
    } catch (const ValidationError& e) {
        EXPECT_NE(std::string(e.what()).find("out-of-range job id 11"), std::string::npos) << e.what();
    }
    EXPECT_THROW((void)evaluate(p1, Sequence{1, 2, 3}), ValidationError);
    EXPECT_THROW((void)total_tardiness(p1, Sequence{0, 2, 3, 4, 5, 6, 7, 8, 9, 10}), ValidationError);
}

TEST(Instance, RejectsBadJobSets) {
    EXPECT_THROW(Instance("empty", {}), ValidationError);
    EXPECT_THROW(Instance("dup", {Job{1, 1, 1}, Job{1, 2, 2}}), ValidationError);
    EXPECT_THROW(Instance("gap", {Job{1, 1, 1}, Job{3, 2, 2}}), ValidationError);
    EXPECT_THROW(Instance("neg-p", {Job{1, -1, 1}}), ValidationError);
    EXPECT_THROW(Instance("neg-d", {Job{1, 1, -1}}), ValidationError);
}

TEST(Instance, AcceptsAnyJobOrder) {
    const Instance inst("shuffled", {Job{2, 4, 9}, Job{1, 3, 7}});
    EXPECT_EQ(inst.job(1).p, 3);
    EXPECT_EQ(inst.job(2).d, 9);
    EXPECT_EQ(inst.total_processing(), 7);
}

TEST(Edd, BuiltinInstance) {
    EXPECT_EQ(edd_sequence(builtin_p1()), (Sequence{1, 2, 9, 7, 3, 8, 5, 10, 6, 4}));
}

TEST(Edd, AlreadySortedIsIdentity) {
    const Instance inst = Instance::from_arrays("s", std::vector<Time>{5, 1, 7, 2}, std::vector<Time>{1, 2, 3, 4});
    EXPECT_EQ(edd_sequence(inst), identity_sequence(4));
}

TEST(Edd, TiesGoToLowerId) {
    const Instance inst = Instance::from_arrays("t", std::vector<Time>{5, 1, 7}, std::vector<Time>{9, 4, 4});
    EXPECT_EQ(edd_sequence(inst), (Sequence{2, 3, 1}));
}

// Properties over random instances and orders.

TEST(EvaluateProperty, MatchesReferenceAndInvariants) {
    std::mt19937 gen(17);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = 1 + static_cast<std::size_t>(gen() % 15);
        const auto raw = smtt_test::random_raw(gen, n);
        const Instance inst = raw.build();
        const auto seq = smtt_test::random_order(gen, n);
        const Evaluation ev = evaluate(inst, seq);

        ASSERT_EQ(ev.total, smtt_test::reference_total(raw.p, raw.d, seq));
        ASSERT_EQ(ev.completion.back(), inst.total_processing());
        Time sum = 0;
        for (std::size_t k = 0; k < n; ++k) {
            ASSERT_GE(ev.tardiness[k], 0);
            if (k > 0) {
                ASSERT_GE(ev.completion[k], ev.completion[k - 1]);
            }
            sum += ev.tardiness[k];
        }
        ASSERT_EQ(sum, ev.total);

        const Evaluation again = evaluate(inst, seq);
        ASSERT_EQ(again.completion, ev.completion);
        ASSERT_EQ(again.total, ev.total);
    }
}

TEST(EvaluateProperty, StrictlyIncreasingWhenAllPositive) {
    std::mt19937 gen(3);
    for (int trial = 0; trial < 200; ++trial) {
        const auto raw = smtt_test::random_raw(gen, 8, 1, 20);
        const auto ev = evaluate(raw.build(), smtt_test::random_order(gen, 8));
        for (std::size_t k = 1; k < ev.completion.size(); ++k) {
            ASSERT_GT(ev.completion[k], ev.completion[k - 1]);
        }
    }
}

TEST(EvaluateProperty, ShiftingDueDatesPastMakespanZeroesEverything) {
    std::mt19937 gen(99);
    for (int trial = 0; trial < 200; ++trial) {
        auto raw = smtt_test::random_raw(gen, 9);
        const Time makespan = std::accumulate(raw.p.begin(), raw.p.end(), Time{0});
        const Time delta = makespan + static_cast<Time>(gen() % 50);
        for (auto& d : raw.d) {
            d += delta;
        }
        const Instance inst = raw.build();
        ASSERT_EQ(total_tardiness(inst, smtt_test::random_order(gen, 9)), 0);
    }
}
