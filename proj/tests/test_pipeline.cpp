#include <gtest/gtest.h>

#include <cmath>

#include "helpers.hpp"

using namespace sssched;
using namespace sssched::testing;

TEST(DetectVariant, CommonWindow) {
    const Instance inst = make_instance(2, 3.0, {{1, 1.0, 1, 0.0, 5.0}, {2, 2.0, 2, 0.0, 5.0}});
    EXPECT_EQ(detect_variant(inst, false).kind, ProblemKind::CommonWindow);
    EXPECT_EQ(detect_variant(inst, true).kind, ProblemKind::CommonWindow);
}

TEST(DetectVariant, CommonRelease) {
    EXPECT_EQ(detect_variant(common_release_pair(), true).kind, ProblemKind::CommonRelease);
}

TEST(DetectVariant, CommonDeadline) {
    const Instance inst = make_instance(4, 3.0, {{1, 1.0, 1, 0.0, 2.0}, {2, 1.0, 1, 1.0, 2.0}});
    EXPECT_EQ(detect_variant(inst, true).kind, ProblemKind::CommonDeadline);
}

TEST(DetectVariant, NonPreemptiveWideJobRejected) {
    const Instance inst = make_instance(4, 3.0, {{1, 1.0, 4, 0.0, 2.0}, {2, 1.0, 1, 1.0, 2.0}});
    EXPECT_THROW(detect_variant(inst, false), VariantError);
    EXPECT_NO_THROW(detect_variant(inst, true));
}

TEST(DetectVariant, GeneralWindowsRejectedWithVariantNames) {
    const Instance inst = make_instance(2, 3.0, {{1, 1.0, 1, 1.0, 2.0}, {2, 1.0, 1, 0.0, 3.0}});
    try {
        detect_variant(inst, true);
        FAIL() << "expected VariantError";
    } catch (const VariantError& e) {
        const std::string what = e.what();
        EXPECT_NE(what.find("common-window"), std::string::npos);
        EXPECT_NE(what.find("common-release"), std::string::npos);
        EXPECT_NE(what.find("common-deadline"), std::string::npos);
    }
}

TEST(TheoreticalBound, Values) {
    EXPECT_DOUBLE_EQ(theoretical_bound({ProblemKind::CommonWindow, false}, 2, 3.0), 2.25);
    EXPECT_DOUBLE_EQ(theoretical_bound({ProblemKind::CommonRelease, true}, 3, 3.0), 4.0);
    EXPECT_DOUBLE_EQ(theoretical_bound({ProblemKind::CommonDeadline, false}, 3, 3.0), 4.0);
    for (auto kind : {ProblemKind::CommonWindow, ProblemKind::CommonRelease, ProblemKind::CommonDeadline})
        EXPECT_DOUBLE_EQ(theoretical_bound({kind, true}, 1, 2.5), 1.0);
}

TEST(Solve, WorkedCommonWindow) {
    const Solution sol = solve(common_window_abc(), false);
    EXPECT_DOUBLE_EQ(sol.energy, 16.0);
    EXPECT_DOUBLE_EQ(sol.lb_energy, 16.0);
    EXPECT_DOUBLE_EQ(sol.ratio, 1.0);
    EXPECT_DOUBLE_EQ(sol.factor, 1.0);
    EXPECT_DOUBLE_EQ(sol.bound, 2.25);
}

TEST(Solve, WorkedCommonRelease) {
    const Instance inst = common_release_pair();
    const Solution sol = solve(inst, true);
    EXPECT_NEAR(sol.lb_energy, 1.0 + 8.0 / 9.0, 1e-12);
    EXPECT_NEAR(sol.factor, 1.25, 1e-12);
    EXPECT_NEAR(sol.energy, 1.5625 * 17.0 / 9.0, 1e-12);
    EXPECT_NEAR(sol.ratio, 1.5625, 1e-12);
    EXPECT_NEAR(sol.bound, 25.0 / 9.0, 1e-12);
    EXPECT_TRUE(validate_schedule(inst, sol.schedule, false).ok());
}

TEST(Solve, EmptyInstance) {
    const Solution sol = solve(make_instance(3, 2.0, {}), true);
    EXPECT_TRUE(sol.schedule.jobs.empty());
    EXPECT_EQ(sol.energy, 0.0);
    EXPECT_EQ(sol.ratio, 1.0);
}

TEST(Solve, ShiftedCommonWindow) {
    Instance inst = shift_instance(common_window_abc(), 4.0);
    const Solution sol = solve(inst, false);
    EXPECT_DOUBLE_EQ(sol.energy, 16.0);
    EXPECT_TRUE(validate_schedule(inst, sol.schedule, true).ok());
    EXPECT_DOUBLE_EQ(sol.schedule.find(1)->segments.front().start, 4.0);
}

TEST(Solve, CommonDeadlineMatchesMirroredCommonRelease) {
    const Instance inst = make_instance(2, 3.0, {{1, 1.0, 1, 1.0, 2.0}, {2, 1.0, 2, 0.0, 2.0}});
    ASSERT_EQ(mirror_instance(inst), common_release_pair());
    const Solution sol = solve(inst, true);
    const Solution ref = solve(common_release_pair(), true);
    EXPECT_EQ(sol.variant.kind, ProblemKind::CommonDeadline);
    EXPECT_NEAR(sol.energy, ref.energy, 1e-12);
    EXPECT_NEAR(sol.lb_energy, ref.lb_energy, 1e-12);
    EXPECT_TRUE(validate_schedule(inst, sol.schedule, false).ok());
    // Mirror of job 2's [0.8, 2) around 2.
    EXPECT_NEAR(sol.schedule.find(2)->segments.front().start, 0.0, 1e-12);
    EXPECT_NEAR(sol.schedule.find(2)->segments.front().end, 1.2, 1e-12);
}

TEST(Solve, NonPreemptiveCommonRelease) {
    const Instance inst = make_instance(4, 2.0, {{1, 1.0, 2, 0.0, 1.0}, {2, 1.0, 2, 0.0, 1.0}, {3, 1.0, 2, 0.0, 2.0}});
    const Solution sol = solve(inst, false);
    EXPECT_TRUE(validate_schedule(inst, sol.schedule, true).ok());
    EXPECT_LE(sol.ratio, sol.bound);
}

TEST(Solve, InvalidInstance) {
    EXPECT_THROW(solve(make_instance(1, 3.0, {{1, 1.0, 2, 0.0, 1.0}}), true), InputError);
}

TEST(ProblemKindNames, RoundTrip) {
    for (auto kind : {ProblemKind::CommonWindow, ProblemKind::CommonRelease, ProblemKind::CommonDeadline})
        EXPECT_EQ(problem_kind_from_string(to_string(kind)), kind);
    EXPECT_THROW(problem_kind_from_string("general"), InputError);
}
