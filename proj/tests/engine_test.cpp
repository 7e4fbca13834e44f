#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "qmoa/engine.hpp"
#include "qmoa/test_functions.hpp"

using namespace qmoa;
using std::numbers::pi;

namespace {

struct Problem {
    SolutionGrid grid;
    ObjectiveTable table;
};

Problem problem(const std::string& fn, int D, std::size_t N) {
    const auto& f = find_test_function(fn);
    auto grid = make_grid(f.lower_bounds(D), f.upper_bounds(D), N);
    auto table = build_objective(grid, [&](std::span<const double> x) { return f(x); });
    return {std::move(grid), std::move(table)};
}

AnsatzSpec qmoa_spec(const SolutionGrid& g, int depth) { return qmoa_complete_spec(g, depth); }

AnsatzSpec qowe_spec(int depth) {
    AnsatzSpec s;
    s.algorithm = Algorithm::qowe;
    s.depth = depth;
    return s;
}

EngineOptions quick(int repeats, std::uint64_t seed = 1) {
    EngineOptions o;
    o.repeats = repeats;
    o.base_seed = seed;
    o.optimiser.max_evaluations = 400;
    return o;
}

}  // namespace

TEST(Engine, RepeatSeedsAreDistinct) {
    std::set<std::uint64_t> seen;
    for (int p = 1; p <= 10; ++p)
        for (int r = 0; r < 60; ++r) seen.insert(repeat_seed(42, p, r));
    EXPECT_EQ(seen.size(), 600u);
    EXPECT_EQ(repeat_seed(42, 3, 7), repeat_seed(42, 3, 7));
    EXPECT_NE(repeat_seed(42, 3, 7), repeat_seed(43, 3, 7));
}

TEST(Engine, DeterministicBestRecord) {
    const auto P = problem("styblinski_tang", 2, 8);
    const auto spec = qmoa_spec(P.grid, 1);
    auto opt = quick(10, 7);
    const auto a = optimise_at_depth(spec, P.table, P.grid, std::nullopt, opt);
    opt.workers = 1;
    const auto b = optimise_at_depth(spec, P.table, P.grid, std::nullopt, opt);
    ASSERT_EQ(a.repeats.size(), 10u);
    EXPECT_EQ(a.best, b.best);
    for (std::size_t r = 0; r < 10; ++r) {
        EXPECT_EQ(a.repeats[r].params, b.repeats[r].params);
        EXPECT_EQ(a.repeats[r].expectation, b.repeats[r].expectation);
        EXPECT_EQ(a.repeats[r].seed, repeat_seed(7, 1, static_cast<int>(r)));
    }
}

TEST(Engine, BestIsLowestWithTiesToFirst) {
    const auto P = problem("sphere", 2, 8);
    const auto res = optimise_at_depth(qmoa_spec(P.grid, 1), P.table, P.grid, std::nullopt, quick(6));
    for (const auto& r : res.repeats) EXPECT_GE(r.expectation, res.best_repeat().expectation);
    for (std::size_t r = 0; r < res.best; ++r) EXPECT_GT(res.repeats[r].expectation, res.best_repeat().expectation);
}

TEST(Engine, FirstDepthDrawsFromStatedRanges) {
    const auto P = problem("sphere", 2, 8);
    const auto res = optimise_at_depth(qmoa_spec(P.grid, 1), P.table, P.grid, std::nullopt, quick(40));
    double gmin = 1e9, gmax = -1e9;
    for (const auto& r : res.repeats) {
        ASSERT_EQ(r.initial.size(), 3u);
        EXPECT_GE(r.initial[0], -2 * pi);
        EXPECT_LT(r.initial[0], 2 * pi);
        gmin = std::min(gmin, r.initial[0]);
        gmax = std::max(gmax, r.initial[0]);
        for (int i = 1; i < 3; ++i) {
            EXPECT_GE(r.initial[i], 0.0);
            EXPECT_LT(r.initial[i], 2 * pi);
        }
    }
    // 40 uniform draws cover both signs of gamma
    EXPECT_LT(gmin, -pi);
    EXPECT_GT(gmax, pi);
}

TEST(Engine, WarmStartCopiesPreviousLayers) {
    const auto P = problem("rastrigin", 2, 8);
    const auto d2 = optimise_at_depth(qmoa_spec(P.grid, 2), P.table, P.grid,
                                      warm_start_from(optimise_at_depth(qmoa_spec(P.grid, 1), P.table, P.grid,
                                                                        std::nullopt, quick(3)),
                                                      3),
                                      quick(3));
    const auto warm = warm_start_from(d2, 3);
    const auto flat = warm.params.flatten();
    const auto d3 = optimise_at_depth(qmoa_spec(P.grid, 3), P.table, P.grid, warm, quick(5));
    for (const auto& r : d3.repeats) {
        ASSERT_EQ(r.initial.size(), 9u);
        for (std::size_t i = 0; i < 6; ++i) EXPECT_EQ(r.initial[i], flat[i]);
    }
    // repeat 0 is the identity extension
    for (std::size_t i = 6; i < 9; ++i) EXPECT_EQ(d3.repeats[0].initial[i], 0.0);
    EXPECT_NE(d3.repeats[1].initial[6], 0.0);
}

TEST(Engine, DepthMonotoneUnderWarmStart) {
    for (const char* fn : {"styblinski_tang", "rastrigin", "ackley"}) {
        const auto P = problem(fn, 2, 16);
        std::optional<WarmStart> warm;
        double last = INFINITY;
        for (int p = 1; p <= 4; ++p) {
            const auto spec = qmoa_spec(P.grid, p);
            const auto res = optimise(spec, P.table, P.grid, warm, quick(3, 11));
            EXPECT_LE(res.best_repeat().expectation, last + 1e-8) << fn << " p=" << p;
            last = res.best_repeat().expectation;
            warm = warm_start_from(res, spec.params_per_layer(2));
        }
    }
}

TEST(Engine, WarmStartErrors) {
    const auto P = problem("sphere", 2, 8);
    WarmStart w{ParameterVector{{{0.1, {0.2, 0.3}}}}, std::nullopt, 0.0};
    EXPECT_THROW(optimise_at_depth(qmoa_spec(P.grid, 3), P.table, P.grid, w, quick(1)), std::invalid_argument);
    WarmStart bad{ParameterVector{{{0.1, {0.2}}}}, std::nullopt, 0.0};
    EXPECT_THROW(optimise_at_depth(qmoa_spec(P.grid, 2), P.table, P.grid, bad, quick(1)), std::invalid_argument);
    EXPECT_THROW(qowe_optimise(qowe_spec(2), P.table, P.grid, w, quick(1)), std::invalid_argument);
    EXPECT_THROW(qowe_optimise(qmoa_spec(P.grid, 1), P.table, P.grid, std::nullopt, quick(1)), std::invalid_argument);
}

TEST(Qowe, BoundBox) {
    const auto b = qowe_bounds(6, 3, 0.1);
    for (std::size_t i = 0; i < 6; ++i) {
        if (i % 3 == 0) {
            EXPECT_NEAR(b[i].lower, 0.0, 1e-15);
            EXPECT_NEAR(b[i].upper, 0.2, 1e-15);
        } else {
            EXPECT_EQ(b[i].lower, 0.0);
            EXPECT_NEAR(b[i].upper, 0.2, 1e-15);
        }
    }
    const std::vector<double> interior{0.05, 0.1, 0.1};
    const std::vector<double> t_zero{0.05, 0.0, 0.1};
    const std::vector<double> t_top{0.05, 0.2, 0.1};
    const std::vector<double> g_low{0.0, 0.1, 0.1};
    const auto b3 = qowe_bounds(3, 3, 0.1);
    EXPECT_FALSE(on_expanding_bound(interior, b3, 3));
    EXPECT_FALSE(on_expanding_bound(t_zero, b3, 3));
    EXPECT_TRUE(on_expanding_bound(t_top, b3, 3));
    EXPECT_TRUE(on_expanding_bound(g_low, b3, 3));
}

TEST(Qowe, WavepacketCentresAvoidTheEdges) {
    const auto P = problem("styblinski_tang", 2, 8);
    auto opt = quick(60, 3);
    opt.optimiser.max_evaluations = 20;
    opt.bound_limit = 0.1;
    const auto res = qowe_optimise(qowe_spec(1), P.table, P.grid, std::nullopt, opt);
    double lo = 1e9, hi = -1e9;
    for (const auto& r : res.repeats) {
        ASSERT_TRUE(r.wavepacket);
        for (int d = 0; d < 2; ++d) {
            EXPECT_GE(r.wavepacket->centres[d], -3.75);
            EXPECT_LE(r.wavepacket->centres[d], 3.75);
            EXPECT_DOUBLE_EQ(r.wavepacket->widths[d], 1 / std::sqrt(2.0));
            lo = std::min(lo, r.wavepacket->centres[d]);
            hi = std::max(hi, r.wavepacket->centres[d]);
        }
        for (std::size_t i = 0; i < r.initial.size(); ++i) EXPECT_EQ(r.initial[i], 0.1);
    }
    EXPECT_LT(lo, -3.0);
    EXPECT_GT(hi, 3.0);
}

TEST(Qowe, BoundGrowsGeometrically) {
    // minimum at the domain edge, far from any starting packet: small t cannot reach it
    const auto P = problem("styblinski_tang", 1, 32);
    auto opt = quick(8, 5);
    opt.optimiser.max_evaluations = 200;
    const auto res = qowe_optimise(qowe_spec(1), P.table, P.grid, std::nullopt, opt);
    int expanded = 0;
    for (const auto& r : res.repeats) {
        EXPECT_NEAR(r.bound, 0.1 * std::pow(1.2, r.bound_passes - 1), 1e-12);
        const auto box = qowe_bounds(2, 2, r.bound);
        for (std::size_t i = 0; i < 2; ++i) {
            EXPECT_GE(r.params[i], box[i].lower - 1e-12);
            EXPECT_LE(r.params[i], box[i].upper + 1e-12);
        }
        if (r.bound_passes == 1) {
            EXPECT_FALSE(on_expanding_bound(r.params, box, 2));
        } else {
            ++expanded;
            // the loop stops on an interior optimum or once b reaches 2 pi
            EXPECT_TRUE(!on_expanding_bound(r.params, box, 2) || r.bound >= 2 * pi);
            EXPECT_LT(r.bound / 1.2, 2 * pi);
        }
    }
    EXPECT_GT(expanded, 0);
}

TEST(Qowe, WarmStartInheritsPacketAndBound) {
    const auto P = problem("sphere", 1, 16);
    auto opt = quick(3, 9);
    opt.optimiser.max_evaluations = 200;
    const auto d1 = qowe_optimise(qowe_spec(1), P.table, P.grid, std::nullopt, opt);
    const auto warm = warm_start_from(d1, 2);
    const auto d2 = qowe_optimise(qowe_spec(2), P.table, P.grid, warm, opt);
    const auto& r0 = d2.repeats[0];
    EXPECT_EQ(r0.wavepacket->centres, warm.wavepacket->centres);
    EXPECT_GE(r0.bound, warm.bound - 1e-15);
    EXPECT_EQ(r0.initial[2], 0.0);
    EXPECT_EQ(r0.initial[3], 0.0);
    EXPECT_LE(d2.best_repeat().expectation, d1.best_repeat().expectation + 1e-8);
}
