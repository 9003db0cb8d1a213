#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace sssched;

TEST(Generator, DeterministicForSeed) {
    GenConfig cfg;
    cfg.seed = 1;
    cfg.n = 25;
    EXPECT_EQ(generate_instance(cfg), generate_instance(cfg));
    GenConfig other = cfg;
    other.seed = 2;
    EXPECT_NE(generate_instance(cfg), generate_instance(other));
}

TEST(Generator, FrozenDraws) {
    // Depends only on mt19937_64, whose output sequence is fixed by the standard.
    Rng rng(5489);
    EXPECT_EQ(std::mt19937_64(5489)(), 14514284786278117030ULL);
    const double u = rng.uniform(0.0, 1.0);
    EXPECT_DOUBLE_EQ(u, static_cast<double>(14514284786278117030ULL >> 11) * 0x1.0p-53);
}

TEST(Generator, VariantShapes) {
    GenConfig cfg;
    cfg.n = 40;
    cfg.m = 6;
    cfg.deadline_spread = 8.0;
    cfg.kind = ProblemKind::CommonWindow;
    for (const auto& j : generate_instance(cfg).jobs) {
        EXPECT_EQ(j.release, 0.0);
        EXPECT_EQ(j.deadline, 8.0);
    }
    cfg.kind = ProblemKind::CommonRelease;
    for (const auto& j : generate_instance(cfg).jobs) {
        EXPECT_EQ(j.release, 0.0);
        EXPECT_GE(j.deadline, 2.0);
        EXPECT_LE(j.deadline, 8.0);
    }
    cfg.kind = ProblemKind::CommonDeadline;
    for (const auto& j : generate_instance(cfg).jobs) {
        EXPECT_EQ(j.deadline, 8.0);
        EXPECT_LE(j.release, 6.0);
    }
}

TEST(Generator, SizeDistributions) {
    GenConfig cfg;
    cfg.n = 60;
    cfg.m = 7;
    cfg.sizes = SizeDist::Small;
    for (const auto& j : generate_instance(cfg).jobs) EXPECT_LE(2 * j.size, cfg.m);
    cfg.sizes = SizeDist::Unit;
    for (const auto& j : generate_instance(cfg).jobs) EXPECT_EQ(j.size, 1);
    cfg.sizes = SizeDist::Any;
    bool wide = false;
    for (const auto& j : generate_instance(cfg).jobs) {
        EXPECT_GE(j.size, 1);
        EXPECT_LE(j.size, cfg.m);
        wide = wide || 2 * j.size > cfg.m;
    }
    EXPECT_TRUE(wide);
}

TEST(Generator, EmptyAndInvalid) {
    GenConfig cfg;
    cfg.n = 0;
    EXPECT_TRUE(generate_instance(cfg).jobs.empty());
    cfg.n = -1;
    EXPECT_THROW(generate_instance(cfg), InputError);
    cfg.n = 3;
    cfg.work_min = 5.0;
    cfg.work_max = 1.0;
    EXPECT_THROW(generate_instance(cfg), InputError);
    cfg = GenConfig{};
    cfg.m = 1;
    cfg.sizes = SizeDist::Small;
    EXPECT_THROW(generate_instance(cfg), InputError);
}
