#include "qmoa/mixers.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "qmoa/kernels.hpp"

namespace qmoa {
namespace {

void require_power_of_two_size(const StateVector& state, const char* who) {
    if (!is_power_of_two(state.size())) throw std::invalid_argument(std::string(who) + ": K must be a power of two");
}

}  // namespace

void phase_shift(StateVector& state, double gamma, const ObjectiveTable& table, std::vector<Complex>* scratch) {
    if (state.size() != table.size()) throw std::invalid_argument("phase_shift: state/table size mismatch");
    if (table.unique_count() * 2 > table.size()) {
        kernels::phase(state.amplitudes(), gamma, table.values);
        return;
    }
    std::vector<Complex> local;
    kernels::phase_by_value(state.amplitudes(), gamma, table.unique_sorted_values, table.value_index,
                            scratch ? *scratch : local);
}

CirculantWalk::CirculantWalk(std::vector<CirculantGraph> graphs) : graphs_(std::move(graphs)) {
    if (graphs_.empty()) throw std::invalid_argument("CirculantWalk: need one graph per dimension");
    for (const auto& g : graphs_) {
        if (g.size() != graphs_.front().size()) throw std::invalid_argument("CirculantWalk: graph sizes differ");
        eigenvalues_.push_back(circulant_eigenvalues(g));
    }
}

void CirculantWalk::apply(StateVector& state, std::span<const double> times, const FourierPlan& plan) const {
    const auto D = graphs_.size();
    if (static_cast<std::size_t>(state.dims()) != D || state.points_per_dim() != graphs_.front().size()) {
        throw std::invalid_argument("qmoa_mixer: graph sizes do not match the state shape");
    }
    if (times.size() != D) throw std::invalid_argument("qmoa_mixer: need one walk time per dimension");
    const std::size_t N = state.points_per_dim();
    std::vector<std::vector<Complex>> factors(D, std::vector<Complex>(N));
    for (std::size_t d = 0; d < D; ++d) {
        for (std::size_t n = 0; n < N; ++n) factors[d][n] = std::polar(1.0, -times[d] * eigenvalues_[d][n]);
    }
    plan.transform(state.amplitudes(), FourierDirection::forward);
    kernels::separable_diagonal(state.amplitudes(), N, factors, 1.0 / static_cast<double>(state.size()));
    plan.transform(state.amplitudes(), FourierDirection::inverse);
}

void qmoa_mixer(StateVector& state, std::span<const double> times, std::span<const CirculantGraph> graphs) {
    CirculantWalk walk({graphs.begin(), graphs.end()});
    walk.apply(state, times, fourier_plan(state.dims(), state.points_per_dim()));
}

void qaoa_complete_mixer(StateVector& state, double t) { kernels::complete_mix(state.amplitudes(), t); }

void hypercube_mixer(StateVector& state, double t) {
    require_power_of_two_size(state, "hypercube_mixer");
    kernels::hypercube_mix(state.amplitudes(), t);
}

void centred_fourier(StateVector& state, int dim, const SolutionGrid& grid, const MomentumGrid& momentum,
                     FourierDirection direction) {
    if (dim < 0 || dim >= grid.dims) throw std::out_of_range("centred_fourier: dimension out of range");
    if (state.dims() != grid.dims || state.points_per_dim() != grid.points_per_dim) {
        throw std::invalid_argument("centred_fourier: state shape does not match grid");
    }
    const std::size_t N = grid.points_per_dim;
    const double k0 = momentum.kappa_0[dim];
    const double dx = grid.spacing[dim];
    const double x0 = grid.lower[dim];
    const bool fwd = direction == FourierDirection::forward;
    // F = diag(exp(-i kappa_m x_0)) DFT diag(exp(-i kappa_0 n dx))
    std::vector<std::vector<Complex>> pre(grid.dims, std::vector<Complex>(N, 1.0));
    std::vector<std::vector<Complex>> post(grid.dims, std::vector<Complex>(N, 1.0));
    for (std::size_t n = 0; n < N; ++n) {
        const Complex in = std::polar(1.0, -k0 * static_cast<double>(n) * dx);
        const Complex out = std::polar(1.0, -momentum.values[dim][n] * x0);
        pre[dim][n] = fwd ? in : std::conj(out);
        post[dim][n] = fwd ? out : std::conj(in);
    }
    const auto& plan = fourier_plan(grid.dims, N);
    kernels::separable_diagonal(state.amplitudes(), N, pre);
    plan.transform_dim(state.amplitudes(), dim, direction);
    kernels::separable_diagonal(state.amplitudes(), N, post, 1.0 / std::sqrt(static_cast<double>(N)));
}

MomentumWalk::MomentumWalk(const SolutionGrid& grid)
    : points_per_dim_(grid.points_per_dim), momentum_(make_momentum_grid(grid)) {
    for (int d = 0; d < grid.dims; ++d) {
        std::vector<Complex> pre(points_per_dim_), conj(points_per_dim_);
        for (std::size_t n = 0; n < points_per_dim_; ++n) {
            pre[n] = std::polar(1.0, -momentum_.kappa_0[d] * static_cast<double>(n) * grid.spacing[d]);
            conj[n] = std::conj(pre[n]);
        }
        pre_phase_.push_back(std::move(pre));
        pre_phase_conj_.push_back(std::move(conj));
    }
}

void MomentumWalk::apply(StateVector& state, std::span<const double> times, const FourierPlan& plan) const {
    const auto D = pre_phase_.size();
    if (static_cast<std::size_t>(state.dims()) != D || state.points_per_dim() != points_per_dim_) {
        throw std::invalid_argument("qowe_mixer: state shape does not match the momentum grid");
    }
    if (times.size() != D) throw std::invalid_argument("qowe_mixer: need one time per dimension");
    const std::size_t N = points_per_dim_;
    // the output-side phases of F and F^{-1} cancel around the diagonal
    std::vector<std::vector<Complex>> kinetic(D, std::vector<Complex>(N));
    for (std::size_t d = 0; d < D; ++d) {
        for (std::size_t m = 0; m < N; ++m) {
            const double k = momentum_.values[d][m];
            kinetic[d][m] = std::polar(1.0, -times[d] * k * k);
        }
    }
    kernels::separable_diagonal(state.amplitudes(), N, pre_phase_);
    plan.transform(state.amplitudes(), FourierDirection::forward);
    kernels::separable_diagonal(state.amplitudes(), N, kinetic, 1.0 / static_cast<double>(state.size()));
    plan.transform(state.amplitudes(), FourierDirection::inverse);
    kernels::separable_diagonal(state.amplitudes(), N, pre_phase_conj_);
}

void qowe_mixer(StateVector& state, std::span<const double> times, const SolutionGrid& grid) {
    MomentumWalk walk(grid);
    walk.apply(state, times, fourier_plan(grid.dims, grid.points_per_dim));
}

}  // namespace qmoa
