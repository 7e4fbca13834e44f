#include "qmoa/state.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <stdexcept>
#include <string>

#include "qmoa/kernels.hpp"

namespace qmoa {

StateVector::StateVector(int dims, std::size_t points_per_dim) : dims_(dims), points_per_dim_(points_per_dim) {
    if (dims < 1 || points_per_dim < 1) throw std::invalid_argument("state vector needs D >= 1 and N >= 1");
    std::size_t total = 1;
    for (int d = 0; d < dims; ++d) total *= points_per_dim;
    amplitudes_.assign(total, Complex(0.0, 0.0));
}

double StateVector::norm_squared() const { return kernels::norm_squared(amplitudes_); }

std::vector<double> StateVector::probabilities() const {
    std::vector<double> p(size());
    for (std::size_t k = 0; k < size(); ++k) p[k] = std::norm(amplitudes_[k]);
    return p;
}

void StateVector::normalise() {
    const double n2 = norm_squared();
    if (!(n2 > 0.0)) throw std::runtime_error("cannot normalise a zero state");
    kernels::scale(amplitudes_, 1.0 / std::sqrt(n2));
}

StateVector equal_superposition(std::size_t total_points) {
    if (total_points == 0) throw std::invalid_argument("equal_superposition: K must be at least 1");
    StateVector s(1, total_points);
    const double a = 1.0 / std::sqrt(static_cast<double>(total_points));
    std::fill(s.amplitudes().begin(), s.amplitudes().end(), Complex(a, 0.0));
    return s;
}

StateVector equal_superposition(const SolutionGrid& grid) {
    StateVector s(grid);
    const double a = 1.0 / std::sqrt(static_cast<double>(s.size()));
    std::fill(s.amplitudes().begin(), s.amplitudes().end(), Complex(a, 0.0));
    return s;
}

StateVector delta_state(const SolutionGrid& grid, std::size_t k) {
    StateVector s(grid);
    if (k >= s.size()) throw std::out_of_range("delta_state: index out of range");
    s[k] = 1.0;
    return s;
}

StateVector gaussian_wavepacket(const SolutionGrid& grid, const WavepacketSpec& spec) {
    const auto D = static_cast<std::size_t>(grid.dims);
    if (spec.centres.size() != D || spec.widths.size() != D) {
        throw std::invalid_argument("wavepacket needs one centre and one width per dimension");
    }
    for (double w : spec.widths) {
        if (!(w > 0.0)) throw std::invalid_argument("wavepacket widths must be positive");
    }
    // separable: per-dimension factors, then outer product
    std::vector<std::vector<Complex>> factors(D);
    for (std::size_t d = 0; d < D; ++d) {
        factors[d].resize(grid.points_per_dim);
        double peak = -INFINITY;
        std::vector<double> exponent(grid.points_per_dim);
        for (std::size_t n = 0; n < grid.points_per_dim; ++n) {
            const double dx = grid.coordinate(static_cast<int>(d), n) - spec.centres[d];
            exponent[n] = -dx * dx / (2.0 * spec.widths[d] * spec.widths[d]);
            peak = std::max(peak, exponent[n]);
        }
        // shifting by the largest exponent keeps narrow packets from underflowing to zero
        for (std::size_t n = 0; n < grid.points_per_dim; ++n) factors[d][n] = std::exp(exponent[n] - peak);
    }
    StateVector s(grid);
    std::fill(s.amplitudes().begin(), s.amplitudes().end(), Complex(1.0, 0.0));
    kernels::separable_diagonal(s.amplitudes(), grid.points_per_dim, factors);
    s.normalise();
    return s;
}

double expectation(const StateVector& state, const ObjectiveTable& table) {
    if (state.size() != table.size()) {
        throw std::invalid_argument("expectation: state has " + std::to_string(state.size()) +
                                    " amplitudes but table has " + std::to_string(table.size()) + " values");
    }
    return kernels::expectation(state.amplitudes(), table.values);
}

Sampler::Sampler(const StateVector& state) {
    const double n2 = state.norm_squared();
    if (std::abs(n2 - 1.0) > 1e-8) {
        throw std::invalid_argument("sample: state is not normalised (norm^2 = " + std::to_string(n2) + ")");
    }
    cumulative_.resize(state.size());
    double acc = 0.0;
    for (std::size_t k = 0; k < state.size(); ++k) {
        acc += state.probability(k);
        cumulative_[k] = acc;
    }
}

std::size_t Sampler::draw(Rng& rng) const {
    const double u = uniform(rng, 0.0, cumulative_.back());
    // first k with cumulative_[k] > u; that entry always has positive probability
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    if (it == cumulative_.end()) {
        // u rounded up to the total: take the last entry carrying probability
        it = std::lower_bound(cumulative_.begin(), cumulative_.end(), cumulative_.back());
    }
    return static_cast<std::size_t>(it - cumulative_.begin());
}

std::vector<std::size_t> Sampler::draw(Rng& rng, std::size_t shots) const {
    std::vector<std::size_t> out(shots);
    for (auto& k : out) k = draw(rng);
    return out;
}

std::vector<std::size_t> sample(const StateVector& state, Rng& rng, std::size_t shots) {
    if (shots == 0) throw std::invalid_argument("sample: shots must be at least 1");
    return Sampler(state).draw(rng, shots);
}

void write_state_csv(std::ostream& out, const StateVector& state) {
    out << "k,re,im,probability\n" << std::setprecision(17);
    for (std::size_t k = 0; k < state.size(); ++k) {
        out << k << ',' << state[k].real() << ',' << state[k].imag() << ',' << state.probability(k) << '\n';
    }
}

}  // namespace qmoa
