#include "qmoa/ansatz.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qmoa {
namespace {

constexpr double kRenormaliseThreshold = 1e-12;

}  // namespace

std::string to_string(Algorithm a) {
    switch (a) {
        case Algorithm::qmoa: return "qmoa";
        case Algorithm::qaoa_complete: return "qaoa_complete";
        case Algorithm::qaoa_hypercube: return "qaoa_hypercube";
        case Algorithm::qowe: return "qowe";
    }
    return "unknown";
}

Algorithm parse_algorithm(std::string_view name) {
    for (auto a : {Algorithm::qmoa, Algorithm::qaoa_complete, Algorithm::qaoa_hypercube, Algorithm::qowe}) {
        if (name == to_string(a)) return a;
    }
    throw std::invalid_argument("unknown algorithm '" + std::string(name) + "'");
}

std::size_t AnsatzSpec::params_per_layer(int dims) const {
    switch (algorithm) {
        case Algorithm::qmoa: return shared_walk_time ? 2 : 1 + static_cast<std::size_t>(dims);
        case Algorithm::qowe: return 1 + static_cast<std::size_t>(dims);
        default: return 2;
    }
}

AnsatzSpec qmoa_complete_spec(const SolutionGrid& grid, int depth) {
    AnsatzSpec spec;
    spec.algorithm = Algorithm::qmoa;
    spec.graphs.assign(grid.dims, CirculantGraph::complete(grid.points_per_dim));
    spec.depth = depth;
    return spec;
}

std::vector<double> ParameterVector::flatten() const {
    std::vector<double> flat;
    for (const auto& l : layers) {
        flat.push_back(l.gamma);
        flat.insert(flat.end(), l.walk_times.begin(), l.walk_times.end());
    }
    return flat;
}

ParameterVector ParameterVector::unflatten(std::span<const double> flat, std::size_t params_per_layer) {
    if (params_per_layer < 2 || flat.size() % params_per_layer != 0) {
        throw std::invalid_argument("parameter vector length does not match the layer layout");
    }
    ParameterVector p;
    for (std::size_t i = 0; i < flat.size(); i += params_per_layer) {
        Layer l;
        l.gamma = flat[i];
        l.walk_times.assign(flat.begin() + static_cast<std::ptrdiff_t>(i + 1),
                            flat.begin() + static_cast<std::ptrdiff_t>(i + params_per_layer));
        p.layers.push_back(std::move(l));
    }
    return p;
}

void check_layout(const AnsatzSpec& spec, const ParameterVector& params, int dims) {
    if (params.depth() != spec.depth) {
        throw std::invalid_argument("parameters have depth " + std::to_string(params.depth()) + ", spec expects " +
                                    std::to_string(spec.depth));
    }
    const std::size_t times = spec.params_per_layer(dims) - 1;
    for (const auto& l : params.layers) {
        if (l.walk_times.size() != times) throw std::invalid_argument("layer has the wrong number of walk times");
        if (!std::isfinite(l.gamma) || !std::all_of(l.walk_times.begin(), l.walk_times.end(),
                                                    [](double t) { return std::isfinite(t); })) {
            throw std::invalid_argument("parameters must be finite");
        }
    }
}

AnsatzSimulator::AnsatzSimulator(AnsatzSpec spec, const ObjectiveTable& table, const SolutionGrid& grid)
    : spec_(std::move(spec)), table_(&table), grid_(grid), per_layer_(spec_.params_per_layer(grid.dims)) {
    if (table.size() != grid.total_points) throw std::invalid_argument("objective table does not match the grid");
    switch (spec_.algorithm) {
        case Algorithm::qmoa:
            if (spec_.graphs.size() != static_cast<std::size_t>(grid.dims)) {
                throw std::invalid_argument("QMOA needs one graph per dimension");
            }
            walk_.emplace(spec_.graphs);
            plan_ = &fourier_plan(grid.dims, grid.points_per_dim);
            break;
        case Algorithm::qowe:
            if (!spec_.wavepacket) throw std::invalid_argument("QOWE needs a wavepacket initial state");
            momentum_.emplace(grid);
            plan_ = &fourier_plan(grid.dims, grid.points_per_dim);
            break;
        case Algorithm::qaoa_hypercube:
            if (!is_power_of_two(grid.total_points)) throw std::invalid_argument("hypercube mixer needs K = 2^M");
            break;
        case Algorithm::qaoa_complete: break;
    }
    initial_ = spec_.wavepacket ? gaussian_wavepacket(grid, *spec_.wavepacket) : equal_superposition(grid);
    state_ = initial_;
    times_.resize(static_cast<std::size_t>(grid.dims));
}

void AnsatzSimulator::apply_mixer(std::span<const double> times) {
    switch (spec_.algorithm) {
        case Algorithm::qmoa:
            if (times.size() == 1) {
                std::fill(times_.begin(), times_.end(), times[0]);
                walk_->apply(state_, times_, *plan_);
            } else {
                walk_->apply(state_, times, *plan_);
            }
            break;
        case Algorithm::qowe: momentum_->apply(state_, times, *plan_); break;
        case Algorithm::qaoa_complete: qaoa_complete_mixer(state_, times[0]); break;
        case Algorithm::qaoa_hypercube: hypercube_mixer(state_, times[0]); break;
    }
}

const StateVector& AnsatzSimulator::prepare(std::span<const double> flat) {
    if (flat.empty() || flat.size() % per_layer_ != 0) {
        throw std::invalid_argument("parameter vector length does not match the layer layout");
    }
    std::copy(initial_.amplitudes().begin(), initial_.amplitudes().end(), state_.amplitudes().begin());
    for (std::size_t i = 0; i < flat.size(); i += per_layer_) {
        phase_shift(state_, flat[i], *table_, &scratch_);
        apply_mixer(flat.subspan(i + 1, per_layer_ - 1));
    }
    const double drift = std::abs(state_.norm_squared() - 1.0);
    max_drift_ = std::max(max_drift_, drift);
    if (renormalise_ && drift > kRenormaliseThreshold) {
        state_.normalise();
        ++renormalisations_;
    }
    return state_;
}

double AnsatzSimulator::objective(std::span<const double> flat) { return expectation(prepare(flat), *table_); }

StateVector apply_ansatz(const AnsatzSpec& spec, const ParameterVector& params, const ObjectiveTable& table,
                         const SolutionGrid& grid) {
    check_layout(spec, params, grid.dims);
    AnsatzSimulator sim(spec, table, grid);
    const auto flat = params.flatten();
    return sim.prepare(flat);
}

double objective_value(const AnsatzSpec& spec, const ParameterVector& params, const ObjectiveTable& table,
                       const SolutionGrid& grid) {
    return expectation(apply_ansatz(spec, params, table, grid), table);
}

}  // namespace qmoa
