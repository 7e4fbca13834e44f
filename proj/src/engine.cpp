#include "qmoa/engine.hpp"

#include <cmath>
#include <exception>
#include <numbers>
#include <stdexcept>

#include <omp.h>

#include "qmoa/rng.hpp"

namespace qmoa {
namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

void check_warm(const AnsatzSpec& spec, const std::optional<WarmStart>& warm, int dims) {
    if (!warm) return;
    if (warm->params.depth() != spec.depth - 1) {
        throw std::invalid_argument("warm start must have depth p-1");
    }
    AnsatzSpec prev = spec;
    prev.depth = spec.depth - 1;
    check_layout(prev, warm->params, dims);
}

std::size_t pick_best(const std::vector<RepeatResult>& repeats) {
    std::size_t best = 0;
    for (std::size_t r = 1; r < repeats.size(); ++r) {
        if (repeats[r].expectation < repeats[best].expectation) best = r;
    }
    return best;
}

// Runs body(r) for every repeat in parallel; rethrows the first failure.
template <class Body>
void for_each_repeat(int repeats, int workers, Body body) {
    std::exception_ptr error;
    const int threads = workers > 0 ? workers : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (int r = 0; r < repeats; ++r) {
        try {
            body(r);
        } catch (...) {
#pragma omp critical(qmoa_engine_error)
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
}

// Kernels inside the repeat loop would oversubscribe; one level is enough.
struct NestedGuard {
    int saved = omp_get_max_active_levels();
    NestedGuard() { omp_set_max_active_levels(1); }
    ~NestedGuard() { omp_set_max_active_levels(saved); }
};

}  // namespace

std::uint64_t repeat_seed(std::uint64_t base_seed, int depth, int repeat) {
    return derive_seed(base_seed, static_cast<std::uint64_t>(depth), static_cast<std::uint64_t>(repeat));
}

std::vector<double> identity_extension(const ParameterVector& warm, std::size_t params_per_layer) {
    auto flat = warm.flatten();
    flat.insert(flat.end(), params_per_layer, 0.0);
    return flat;
}

WarmStart warm_start_from(const DepthResult& result, std::size_t params_per_layer) {
    const auto& b = result.best_repeat();
    return WarmStart{ParameterVector::unflatten(b.params, params_per_layer), b.wavepacket, b.bound};
}

DepthResult optimise_at_depth(const AnsatzSpec& spec, const ObjectiveTable& table, const SolutionGrid& grid,
                              const std::optional<WarmStart>& warm, const EngineOptions& options) {
    if (spec.depth < 1) throw std::invalid_argument("depth must be at least 1");
    if (options.repeats < 1) throw std::invalid_argument("repeats must be at least 1");
    check_warm(spec, warm, grid.dims);
    const std::size_t per_layer = spec.params_per_layer(grid.dims);
    const std::size_t total = spec.parameter_count(grid.dims);

    DepthResult out;
    out.depth = spec.depth;
    out.repeats.resize(static_cast<std::size_t>(options.repeats));
    NestedGuard guard;
    for_each_repeat(options.repeats, options.workers, [&](int r) {
        RepeatResult& rec = out.repeats[static_cast<std::size_t>(r)];
        rec.repeat = r;
        rec.seed = repeat_seed(options.base_seed, spec.depth, r);
        Rng rng(rec.seed);
        std::vector<double> x0;
        if (warm) x0 = warm->params.flatten();
        if (warm && r == 0 && options.identity_extension) {
            x0 = identity_extension(warm->params, per_layer);
        } else {
            while (x0.size() < total) {
                x0.push_back(uniform(rng, -two_pi, two_pi));
                for (std::size_t i = 1; i < per_layer; ++i) x0.push_back(uniform(rng, 0.0, two_pi));
            }
        }
        AnsatzSimulator sim(spec, table, grid);
        auto res = nelder_mead([&](std::span<const double> x) { return sim.objective(x); }, x0, options.optimiser);
        rec.initial = std::move(x0);
        rec.params = std::move(res.x);
        rec.expectation = res.value;
        rec.evaluations = res.evaluations;
        rec.iterations = res.iterations;
        rec.converged = res.converged;
        rec.renormalisations = sim.renormalisations();
    });
    out.best = pick_best(out.repeats);
    return out;
}

std::vector<Interval> qowe_bounds(std::size_t parameter_count, std::size_t params_per_layer, double b, double start) {
    std::vector<Interval> bounds(parameter_count);
    for (std::size_t i = 0; i < parameter_count; ++i) {
        bounds[i] = i % params_per_layer == 0 ? Interval{start - b, start + b} : Interval{0.0, start + b};
    }
    return bounds;
}

bool on_expanding_bound(std::span<const double> x, std::span<const Interval> bounds, std::size_t params_per_layer) {
    for (std::size_t i = 0; i < x.size(); ++i) {
        const bool gamma = i % params_per_layer == 0;
        if (std::abs(x[i] - bounds[i].upper) <= kBoundTolerance) return true;
        // the t >= 0 side is physical and never expands
        if (gamma && std::abs(x[i] - bounds[i].lower) <= kBoundTolerance) return true;
    }
    return false;
}

DepthResult qowe_optimise(const AnsatzSpec& spec_in, const ObjectiveTable& table, const SolutionGrid& grid,
                          const std::optional<WarmStart>& warm, const EngineOptions& options) {
    if (spec_in.algorithm != Algorithm::qowe) throw std::invalid_argument("qowe_optimise needs a QOWE spec");
    if (spec_in.depth < 1) throw std::invalid_argument("depth must be at least 1");
    if (options.repeats < 1) throw std::invalid_argument("repeats must be at least 1");
    const std::size_t per_layer = spec_in.params_per_layer(grid.dims);
    const std::size_t total = spec_in.parameter_count(grid.dims);
    if (warm) {
        if (warm->params.depth() != spec_in.depth - 1) throw std::invalid_argument("warm start must have depth p-1");
        if (!warm->wavepacket) throw std::invalid_argument("QOWE warm start needs its wavepacket");
    }

    DepthResult out;
    out.depth = spec_in.depth;
    out.repeats.resize(static_cast<std::size_t>(options.repeats));
    NestedGuard guard;
    for_each_repeat(options.repeats, options.workers, [&](int r) {
        RepeatResult& rec = out.repeats[static_cast<std::size_t>(r)];
        rec.repeat = r;
        rec.seed = repeat_seed(options.base_seed, spec_in.depth, r);
        Rng rng(rec.seed);
        const bool inherit = warm && r == 0 && options.identity_extension;

        WavepacketSpec packet;
        if (inherit) {
            packet = *warm->wavepacket;
        } else {
            for (int d = 0; d < grid.dims; ++d) {
                const double L = grid.upper[d] - grid.lower[d];
                packet.centres.push_back(uniform(rng, grid.lower[d] + L / 8.0, grid.upper[d] - L / 8.0));
                packet.widths.push_back(1.0 / std::sqrt(2.0));
            }
        }
        AnsatzSpec spec = spec_in;
        spec.wavepacket = packet;

        std::vector<double> x0;
        if (inherit) {
            x0 = identity_extension(warm->params, per_layer);
        } else {
            if (warm) x0 = warm->params.flatten();
            x0.resize(total, options.qowe_start);
        }

        AnsatzSimulator sim(spec, table, grid);
        double b = warm ? std::max(warm->bound, options.bound_initial) : options.bound_initial;
        OptimiserOptions opt = options.optimiser;
        OptimisationResult res;
        int passes = 0;
        long evaluations = 0;
        while (true) {
            const auto bounds = qowe_bounds(total, per_layer, b, options.qowe_start);
            opt.bounds = bounds;
            res = nelder_mead([&](std::span<const double> x) { return sim.objective(x); }, x0, opt);
            ++passes;
            evaluations += res.evaluations;
            if (!on_expanding_bound(res.x, bounds, per_layer) || b >= options.bound_limit) break;
            b *= options.bound_growth;
        }
        rec.initial = std::move(x0);
        rec.params = std::move(res.x);
        rec.expectation = res.value;
        rec.evaluations = evaluations;
        rec.iterations = res.iterations;
        rec.converged = res.converged;
        rec.wavepacket = packet;
        rec.bound = b;
        rec.bound_passes = passes;
        rec.renormalisations = sim.renormalisations();
    });
    out.best = pick_best(out.repeats);
    return out;
}

DepthResult optimise(const AnsatzSpec& spec, const ObjectiveTable& table, const SolutionGrid& grid,
                     const std::optional<WarmStart>& warm, const EngineOptions& options) {
    return spec.algorithm == Algorithm::qowe ? qowe_optimise(spec, table, grid, warm, options)
                                             : optimise_at_depth(spec, table, grid, warm, options);
}

}  // namespace qmoa
