#include <gtest/gtest.h>

#include "qmoa/hybrid.hpp"
#include "qmoa/test_functions.hpp"

using namespace qmoa;

TEST(HybridAccounting, WorkedExample) {
    HybridAccounting a;
    a.fev_qmoa = 10;
    a.p = 2;
    a.sample_size = 30;
    a.fev_nelder_mead = 400;
    EXPECT_EQ(a.assisted_cost(), 1300);
    EXPECT_NEAR(speedup(4000, a), 4000.0 / 1300.0, 1e-15);
    EXPECT_NEAR(speedup(4000, a), 3.08, 0.005);
}

TEST(HybridAccounting, SpeedupRatios) {
    HybridAccounting a;
    a.p = 1;
    a.sample_size = 1;
    a.fev_qmoa = 250;
    a.fev_nelder_mead = 500;
    EXPECT_EQ(speedup(1000, a), 1.0);
    EXPECT_EQ(speedup(2000, a), 2.0);
    EXPECT_THROW(speedup(0, a), std::invalid_argument);
    HybridAccounting zero;
    EXPECT_THROW(speedup(10, zero), std::invalid_argument);
}

TEST(Hybrid, FindsMinimumWithConsistentAccounting) {
    HybridOptions o;
    o.depth = 1;
    o.points_per_dim = 8;
    const auto r = hybrid_optimise(find_test_function("sphere"), 2, o, 11);
    ASSERT_TRUE(r.success);
    EXPECT_LE(r.value, 1e-4);
    EXPECT_NEAR(r.value, find_test_function("sphere")(r.x), 0.0);
    const auto& a = r.accounting;
    EXPECT_GT(a.fev_qmoa, 0);
    EXPECT_GT(a.fev_nelder_mead, 0);
    EXPECT_EQ(a.fev_assisted, a.assisted_cost());
    EXPECT_EQ(a.fev_assisted, 30L * 2 * a.fev_qmoa + a.fev_nelder_mead);
    EXPECT_GE(r.seeded_runs, 1);
    EXPECT_GE(r.outer_runs, 1);
}

TEST(Hybrid, DeterministicForSeed) {
    HybridOptions o;
    o.points_per_dim = 16;
    const auto& stf = find_test_function("styblinski_tang");
    const auto a = hybrid_optimise(stf, 2, o, 5);
    const auto b = hybrid_optimise(stf, 2, o, 5);
    EXPECT_EQ(a.success, b.success);
    EXPECT_EQ(a.x, b.x);
    EXPECT_EQ(a.accounting.fev_qmoa, b.accounting.fev_qmoa);
    EXPECT_EQ(a.accounting.fev_nelder_mead, b.accounting.fev_nelder_mead);
    if (a.success) EXPECT_LE(a.value, stf.known_minimum(2) + 1e-4);
}

TEST(Baseline, DeterministicAndSuccessful) {
    const auto& stf = find_test_function("styblinski_tang");
    const auto a = classical_baseline(stf, 2, 1e-4, 3);
    const auto b = classical_baseline(stf, 2, 1e-4, 3);
    ASSERT_TRUE(a.success);
    EXPECT_EQ(a.evaluations, b.evaluations);
    EXPECT_EQ(a.x, b.x);
    EXPECT_LE(a.value, stf.known_minimum(2) + 1e-4);
    for (int d = 0; d < 2; ++d) EXPECT_NEAR(a.x[d], -2.903534, 1e-2);
}

TEST(Baseline, BudgetIsReported) {
    const auto& rf = find_test_function("rastrigin");
    const auto r = classical_baseline(rf, 5, 1e-4, 1, 500);
    EXPECT_FALSE(r.success);
    EXPECT_GE(r.evaluations, 500);
    EXPECT_LE(r.evaluations, 500 + 200 * 5);
    EXPECT_GT(r.evaluations, 0);
}
