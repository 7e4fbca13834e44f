#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "qmoa/graphs.hpp"
#include "qmoa/kernels.hpp"
#include "qmoa/mixers.hpp"
#include "qmoa/objective.hpp"
#include "qmoa/reference.hpp"
#include "support.hpp"

using namespace qmoa;

namespace {

std::vector<double> random_values(std::size_t K, std::uint64_t seed, int distinct = 0) {
    Rng rng(seed);
    std::vector<double> v(K);
    for (auto& x : v) {
        x = distinct > 0 ? std::floor(uniform(rng, 0.0, distinct)) : uniform(rng, -10.0, 10.0);
    }
    return v;
}

using Shapes = std::vector<std::pair<int, std::size_t>>;

struct Copies {
    StateVector fast, slow;
};

Copies twin(int D, std::size_t N, std::uint64_t seed) {
    auto s = test::random_state(D, N, seed);
    return {s, s};
}

}  // namespace

TEST(Kernels, NormAndExpectationMatchReference) {
    for (auto [D, N] : Shapes{{1, 7}, {2, 16}, {3, 32}}) {
        const auto s = test::random_state(D, N, 11);
        const auto v = random_values(s.size(), 3);
        EXPECT_NEAR(kernels::norm_squared(s.amplitudes()), reference::norm_squared(s.amplitudes()), 1e-12);
        EXPECT_NEAR(kernels::expectation(s.amplitudes(), v), reference::expectation(s.amplitudes(), v), 1e-11);
    }
}

TEST(Kernels, PhaseMatchesReference) {
    auto [fast, slow] = twin(3, 16, 5);
    const auto v = random_values(fast.size(), 8);
    kernels::phase(fast.amplitudes(), 0.731, v);
    reference::phase(slow.amplitudes(), 0.731, v);
    EXPECT_LT(test::max_deviation(fast.amplitudes(), slow.amplitudes()), 1e-13);
}

TEST(Kernels, PhaseByValueMatchesReference) {
    auto [fast, slow] = twin(2, 32, 6);
    const auto table = make_objective_table(random_values(fast.size(), 9, 17));
    ASSERT_LE(table.unique_count(), 17u);
    std::vector<Complex> scratch;
    kernels::phase_by_value(fast.amplitudes(), -2.4, table.unique_sorted_values, table.value_index, scratch);
    reference::phase(slow.amplitudes(), -2.4, table.values);
    EXPECT_LT(test::max_deviation(fast.amplitudes(), slow.amplitudes()), 1e-13);
}

TEST(Kernels, PhaseShiftTakesEitherPath) {
    // few distinct values routes through phase_by_value, many through phase
    for (int distinct : {3, 0}) {
        auto [fast, slow] = twin(2, 16, 12);
        const auto table = make_objective_table(random_values(fast.size(), 4, distinct));
        phase_shift(fast, 1.3, table);
        reference::phase(slow.amplitudes(), 1.3, table.values);
        EXPECT_LT(test::max_deviation(fast.amplitudes(), slow.amplitudes()), 1e-13);
    }
}

TEST(Kernels, CompleteMixMatchesReference) {
    for (std::size_t K : {1u, 2u, 5u, 64u, 4096u}) {
        auto [fast, slow] = twin(1, K, K);
        kernels::complete_mix(fast.amplitudes(), 0.9);
        reference::complete_mix(slow.amplitudes(), 0.9);
        EXPECT_LT(test::max_deviation(fast.amplitudes(), slow.amplitudes()), 1e-12) << "K=" << K;
    }
}

TEST(Kernels, HypercubeMixMatchesReference) {
    for (std::size_t K : {2u, 8u, 1024u, 32768u}) {
        auto [fast, slow] = twin(1, K, K + 1);
        kernels::hypercube_mix(fast.amplitudes(), -0.37);
        reference::hypercube_mix(slow.amplitudes(), -0.37);
        EXPECT_LT(test::max_deviation(fast.amplitudes(), slow.amplitudes()), 1e-12) << "K=" << K;
    }
}

TEST(Kernels, SeparableDiagonalMatchesReference) {
    const int D = 3;
    const std::size_t N = 8;
    auto [fast, slow] = twin(D, N, 21);
    std::vector<std::vector<Complex>> f(D, std::vector<Complex>(N));
    Rng rng(2);
    for (auto& row : f)
        for (auto& z : row) z = std::polar(1.0, uniform(rng, -3.0, 3.0));
    kernels::separable_diagonal(fast.amplitudes(), N, f, 0.5);
    reference::separable_diagonal(slow.amplitudes(), N, f, 0.5);
    EXPECT_LT(test::max_deviation(fast.amplitudes(), slow.amplitudes()), 1e-14);
}

TEST(Kernels, FftMixerMatchesDirectDft) {
    for (auto [D, N] : Shapes{{1, 12}, {2, 8}, {3, 16}}) {
        auto [fast, slow] = twin(D, N, 31);
        std::vector<CirculantGraph> graphs;
        std::vector<double> times;
        for (int d = 0; d < D; ++d) {
            graphs.push_back(d % 2 ? CirculantGraph::cycle(N) : CirculantGraph::banded(N, 2));
            times.push_back(0.4 + 0.3 * d);
        }
        qmoa_mixer(fast, times, graphs);
        reference::qmoa_mixer(slow.amplitudes(), N, times, graphs);
        EXPECT_LT(test::max_deviation(fast.amplitudes(), slow.amplitudes()), 1e-11) << "D=" << D << " N=" << N;
    }
}

TEST(Kernels, MomentumMixerMatchesDirectTransform) {
    for (auto [D, N] : Shapes{{1, 16}, {2, 8}, {3, 8}}) {
        const std::vector<double> lo(D, -5.0), hi(D, 5.0);
        const auto grid = make_grid(lo, hi, N);
        auto [fast, slow] = twin(D, N, 41);
        std::vector<double> times(D);
        for (int d = 0; d < D; ++d) times[d] = 0.05 * (d + 1);
        qowe_mixer(fast, times, grid);
        reference::qowe_mixer(slow.amplitudes(), grid, make_momentum_grid(grid), times);
        EXPECT_LT(test::max_deviation(fast.amplitudes(), slow.amplitudes()), 1e-11);
    }
}

TEST(Kernels, CentredFourierMatchesDirectTransform) {
    const std::vector<double> lo{-2.0, 0.0}, hi{3.0, 1.0};
    const auto grid = make_grid(lo, hi, 8);
    const auto momentum = make_momentum_grid(grid);
    for (int dim = 0; dim < 2; ++dim) {
        for (auto dir : {FourierDirection::forward, FourierDirection::inverse}) {
            auto [fast, slow] = twin(2, 8, 51 + dim);
            centred_fourier(fast, dim, grid, momentum, dir);
            reference::centred_fourier_along(slow.amplitudes(), grid, momentum, dim,
                                             dir == FourierDirection::forward ? reference::Direction::forward
                                                                              : reference::Direction::inverse);
            EXPECT_LT(test::max_deviation(fast.amplitudes(), slow.amplitudes()), 1e-12);
        }
    }
}
