#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "qmoa/test_functions.hpp"

namespace qmoa {

struct OptimiserOptions {
    // an unset limit is unbounded, unless both are unset (then 200 n each)
    std::optional<long> max_iterations = 1000000;
    std::optional<long> max_evaluations;
    double simplex_tolerance = 1e-4;
    double value_tolerance = 1e-4;
    bool adaptive = true;
    std::optional<std::vector<Interval>> bounds;
    // called after every iteration with (iteration, best value, best point)
    std::function<void(long, double, std::span<const double>)> trace;

    // Both limits unset: the optimiser falls back to 200 n of each.
    static OptimiserOptions library_defaults();
};

struct OptimisationResult {
    std::vector<double> x;
    double value = 0.0;
    long evaluations = 0;
    long iterations = 0;
    // stopped on the tolerances rather than a limit
    bool converged = false;
    // candidate points that were projected onto the bounds
    long clamped = 0;
};

using ScalarObjective = std::function<double(std::span<const double>)>;

// Downhill simplex with the dimension-adaptive coefficients of Gao and Han
// (when options.adaptive), following the SciPy reference implementation step
// for step so evaluation counts match it.
OptimisationResult nelder_mead(const ScalarObjective& f, std::span<const double> x0,
                               const OptimiserOptions& options = {});

}  // namespace qmoa
