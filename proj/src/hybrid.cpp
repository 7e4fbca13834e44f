#include "qmoa/hybrid.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

#include "qmoa/ansatz.hpp"
#include "qmoa/objective.hpp"
#include "qmoa/rng.hpp"
#include "qmoa/state.hpp"

namespace qmoa {
namespace {

struct Found {};

}  // namespace

double speedup(long baseline_fev, const HybridAccounting& accounting) {
    const long assisted = accounting.assisted_cost();
    if (baseline_fev <= 0 || assisted <= 0) throw std::invalid_argument("speedup: evaluation counts must be positive");
    return static_cast<double>(baseline_fev) / static_cast<double>(assisted);
}

HybridResult hybrid_optimise(const TestFunction& function, int dims, const HybridOptions& options,
                             std::uint64_t seed) {
    if (!function.supports(dims)) throw std::invalid_argument(function.name + " does not support D=" + std::to_string(dims));
    if (options.sample_size < 1) throw std::invalid_argument("hybrid: sample size must be at least 1");
    const auto lo = function.lower_bounds(dims);
    const auto hi = function.upper_bounds(dims);
    const auto grid = make_grid(lo, hi, options.points_per_dim, options.endpoints);
    const auto table = build_objective(grid, [&](std::span<const double> x) { return function(x); });
    const double target = function.known_minimum(dims) + options.epsilon;

    HybridResult out;
    out.accounting.sample_size = options.sample_size;
    out.accounting.p = options.depth;

    Rng rng(seed);
    AnsatzSimulator sim(qmoa_complete_spec(grid, options.depth), table, grid);
    std::set<std::size_t> tried;
    std::vector<double> coords(static_cast<std::size_t>(dims));
    const auto classical = OptimiserOptions::library_defaults();

    auto estimate = [&](std::span<const double> params) {
        const Sampler sampler(sim.prepare(params));
        ++out.accounting.fev_qmoa;
        double sum = 0.0;
        std::size_t best_k = 0;
        double best_f = INFINITY;
        for (int s = 0; s < options.sample_size; ++s) {
            const std::size_t k = sampler.draw(rng);
            sum += table.values[k];
            if (table.values[k] < best_f) {
                best_f = table.values[k];
                best_k = k;
            }
        }
        if (tried.insert(best_k).second) {
            index_to_coords(grid, best_k, coords);
            ++out.seeded_runs;
            const auto res = nelder_mead([&](std::span<const double> x) { return function(x); }, coords, classical);
            out.accounting.fev_nelder_mead += res.evaluations;
            if (res.value <= target) {
                out.success = true;
                out.x = res.x;
                out.value = res.value;
                throw Found{};
            }
        }
        return sum / options.sample_size;
    };

    const std::size_t per_layer = sim.params_per_layer();
    try {
        for (int run = 0; run <= options.max_outer_restarts; ++run) {
            ++out.outer_runs;
            std::vector<double> x0;
            for (int l = 0; l < options.depth; ++l) {
                x0.push_back(uniform(rng, -2.0 * std::numbers::pi, 2.0 * std::numbers::pi));
                for (std::size_t i = 1; i < per_layer; ++i) x0.push_back(uniform(rng, 0.0, 2.0 * std::numbers::pi));
            }
            nelder_mead(estimate, x0, classical);
        }
    } catch (const Found&) {
    }
    out.accounting.fev_assisted = out.accounting.assisted_cost();
    return out;
}

BaselineResult classical_baseline(const TestFunction& function, int dims, double epsilon, std::uint64_t seed,
                                  long max_evaluations) {
    if (!function.supports(dims)) throw std::invalid_argument(function.name + " does not support D=" + std::to_string(dims));
    const auto lo = function.lower_bounds(dims);
    const auto hi = function.upper_bounds(dims);
    const double target = function.known_minimum(dims) + epsilon;
    const auto options = OptimiserOptions::library_defaults();
    Rng rng(seed);
    BaselineResult out;
    std::vector<double> x0(static_cast<std::size_t>(dims));
    while (out.evaluations < max_evaluations) {
        for (int d = 0; d < dims; ++d) x0[d] = uniform(rng, lo[d], hi[d]);
        const auto res = nelder_mead([&](std::span<const double> x) { return function(x); }, x0, options);
        ++out.restarts;
        out.evaluations += res.evaluations;
        if (res.value <= target) {
            out.success = true;
            out.x = res.x;
            out.value = res.value;
            break;
        }
    }
    return out;
}

}  // namespace qmoa
