#pragma once

#include <cstdint>
#include <vector>

#include "qmoa/grid.hpp"
#include "qmoa/nelder_mead.hpp"
#include "qmoa/test_functions.hpp"

namespace qmoa {

struct HybridAccounting {
    // number of sampled <Q> estimations
    long fev_qmoa = 0;
    // f evaluations spent by the seeded classical optimisations
    long fev_nelder_mead = 0;
    int sample_size = 30;
    int p = 1;
    long fev_assisted = 0;
    double speedup = 0.0;

    // sample_size (p + 1) fev_qmoa + fev_nelder_mead
    long assisted_cost() const { return static_cast<long>(sample_size) * (p + 1) * fev_qmoa + fev_nelder_mead; }
};

struct HybridOptions {
    int depth = 2;
    std::size_t points_per_dim = 16;
    Endpoints endpoints = Endpoints::inclusive;
    int sample_size = 30;
    double epsilon = 1e-4;
    // fresh outer optimisations after one converges without a success
    int max_outer_restarts = 50;
    long max_baseline_evaluations = 100000000;
};

struct HybridResult {
    bool success = false;
    std::vector<double> x;
    double value = 0.0;
    HybridAccounting accounting;
    int outer_runs = 0;
    int seeded_runs = 0;
};

// Outer Nelder-Mead (library defaults) on the QMOA(Complete) parameters,
// minimising the mean of f over sample_size measurements. Every sample-set
// minimum not tried before seeds a classical Nelder-Mead on the continuous f;
// the first one reaching known_minimum + epsilon ends the run.
HybridResult hybrid_optimise(const TestFunction& function, int dims, const HybridOptions& options,
                             std::uint64_t seed);

struct BaselineResult {
    bool success = false;
    long evaluations = 0;
    int restarts = 0;
    std::vector<double> x;
    double value = 0.0;
};

// Nelder-Mead (library defaults) from uniform random domain points until one
// run reaches known_minimum + epsilon. No new run starts once max_evaluations
// are spent; the run in flight finishes (at most 200 D more).
BaselineResult classical_baseline(const TestFunction& function, int dims, double epsilon, std::uint64_t seed,
                                  long max_evaluations = 100000000);

// baseline / assisted; throws on non-positive inputs
double speedup(long baseline_fev, const HybridAccounting& accounting);

}  // namespace qmoa
