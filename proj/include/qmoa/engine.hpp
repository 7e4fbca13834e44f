#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "qmoa/ansatz.hpp"
#include "qmoa/nelder_mead.hpp"

namespace qmoa {

inline constexpr double kBoundTolerance = 1e-9;

struct EngineOptions {
    int repeats = 10;
    std::uint64_t base_seed = 0;
    OptimiserOptions optimiser;
    // seed repeat 0 with the warm start extended by an identity layer
    bool identity_extension = true;
    // 0 keeps the OpenMP default
    int workers = 0;
    // QOWE bound expansion
    double bound_initial = 0.1;
    double bound_growth = 1.2;
    double bound_limit = 6.283185307179586;
    double qowe_start = 0.1;
};

struct RepeatResult {
    int repeat = 0;
    std::uint64_t seed = 0;
    std::vector<double> initial;
    std::vector<double> params;
    double expectation = 0.0;
    long evaluations = 0;
    long iterations = 0;
    bool converged = false;
    // objective calls whose state needed renormalising (drift > 1e-12)
    long renormalisations = 0;
    // QOWE only
    std::optional<WavepacketSpec> wavepacket;
    double bound = 0.0;
    int bound_passes = 0;
};

struct DepthResult {
    int depth = 0;
    std::vector<RepeatResult> repeats;
    std::size_t best = 0;

    const RepeatResult& best_repeat() const { return repeats[best]; }
};

// Warm start = the best record of the previous depth.
struct WarmStart {
    ParameterVector params;
    std::optional<WavepacketSpec> wavepacket;
    double bound = 0.0;
};

// seed of repeat r at depth p
std::uint64_t repeat_seed(std::uint64_t base_seed, int depth, int repeat);

// `spec.depth` selects p. Each repeat copies the warm start into the first
// p-1 layers and draws the rest from U[0,2pi) (walk times) and U[-2pi,2pi)
// (gamma). Repeats run in parallel; the best is the lowest <Q>, ties to the
// lowest repeat index.
DepthResult optimise_at_depth(const AnsatzSpec& spec, const ObjectiveTable& table, const SolutionGrid& grid,
                              const std::optional<WarmStart>& warm, const EngineOptions& options);

// QOWE protocol: start at t = gamma = 0.1 inside (0, 0.1+b) x (0.1-b, 0.1+b),
// grow b by 1.2 while any optimised parameter sits on a b-controlled bound,
// stop once b >= 2pi. Each repeat draws a wavepacket centre from the middle
// three quarters of the domain with width 1/sqrt 2.
DepthResult qowe_optimise(const AnsatzSpec& spec, const ObjectiveTable& table, const SolutionGrid& grid,
                          const std::optional<WarmStart>& warm, const EngineOptions& options);

// Either of the two above, depending on the algorithm.
DepthResult optimise(const AnsatzSpec& spec, const ObjectiveTable& table, const SolutionGrid& grid,
                     const std::optional<WarmStart>& warm, const EngineOptions& options);

WarmStart warm_start_from(const DepthResult& result, std::size_t params_per_layer);

std::vector<double> identity_extension(const ParameterVector& warm, std::size_t params_per_layer);

// Bounds of the QOWE search box for a given b, in the flat parameter layout.
std::vector<Interval> qowe_bounds(std::size_t parameter_count, std::size_t params_per_layer, double b,
                                  double start = 0.1);
// true if any parameter is within kBoundTolerance of a b-controlled bound
bool on_expanding_bound(std::span<const double> x, std::span<const Interval> bounds, std::size_t params_per_layer);

}  // namespace qmoa
