#include "qmoa/reference.hpp"

#include <cmath>
#include <stdexcept>

#include "qmoa/graphs.hpp"
#include "qmoa/grid.hpp"

namespace qmoa::reference {
namespace {

// Apply a dense N x N operator (row-major) to every line along `dim`.
template <class Element>
void apply_along(std::span<Complex> state, std::size_t N, int dims, int dim, Element&& element) {
    std::size_t stride = 1;
    for (int d = 0; d < dim; ++d) stride *= N;
    std::size_t total = 1;
    for (int d = 0; d < dims; ++d) total *= N;
    std::vector<Complex> line(N), out(N);
    for (std::size_t base = 0; base < total; ++base) {
        if ((base / stride) % N != 0) continue;
        for (std::size_t n = 0; n < N; ++n) line[n] = state[base + n * stride];
        for (std::size_t m = 0; m < N; ++m) {
            Complex acc = 0.0;
            for (std::size_t n = 0; n < N; ++n) acc += element(m, n) * line[n];
            out[m] = acc;
        }
        for (std::size_t n = 0; n < N; ++n) state[base + n * stride] = out[n];
    }
}

}  // namespace

double norm_squared(std::span<const Complex> state) {
    double sum = 0.0;
    for (const Complex& a : state) sum += std::norm(a);
    return sum;
}

double expectation(std::span<const Complex> state, std::span<const double> values) {
    double sum = 0.0;
    for (std::size_t k = 0; k < state.size(); ++k) sum += values[k] * std::norm(state[k]);
    return sum;
}

void phase(std::span<Complex> state, double gamma, std::span<const double> values) {
    for (std::size_t k = 0; k < state.size(); ++k) {
        state[k] *= Complex(std::cos(gamma * values[k]), -std::sin(gamma * values[k]));
    }
}

void complete_mix(std::span<Complex> state, double t) {
    const double K = static_cast<double>(state.size());
    Complex mean = 0.0;
    for (const Complex& a : state) mean += a;
    mean /= K;
    const Complex factor = std::exp(Complex(0.0, -t * K)) - 1.0;
    const Complex global = std::exp(Complex(0.0, t));
    for (Complex& a : state) a = global * (a + factor * mean);
}

void hypercube_mix(std::span<Complex> state, double t) {
    const std::size_t n = state.size();
    if (n == 0 || (n & (n - 1)) != 0) throw std::invalid_argument("hypercube_mix: size must be a power of two");
    const Complex c(std::cos(t), 0.0);
    const Complex s(0.0, -std::sin(t));
    for (std::size_t bit = 1; bit < n; bit <<= 1) {
        for (std::size_t a = 0; a < n; ++a) {
            if (a & bit) continue;
            const std::size_t b = a | bit;
            const Complex xa = state[a], xb = state[b];
            state[a] = c * xa + s * xb;
            state[b] = c * xb + s * xa;
        }
    }
}

void separable_diagonal(std::span<Complex> state, std::size_t points_per_dim,
                        std::span<const std::vector<Complex>> factors, Complex scale) {
    for (std::size_t k = 0; k < state.size(); ++k) {
        Complex f = scale;
        std::size_t rest = k;
        for (const auto& factor : factors) {
            f *= factor[rest % points_per_dim];
            rest /= points_per_dim;
        }
        state[k] *= f;
    }
}

void dft_along(std::span<Complex> state, std::size_t N, int dims, int dim, Direction direction) {
    const double norm = 1.0 / std::sqrt(static_cast<double>(N));
    const double sign = direction == Direction::forward ? -1.0 : 1.0;
    apply_along(state, N, dims, dim, [&](std::size_t m, std::size_t n) {
        const std::size_t r = (m * n) % N;
        return Complex(norm * cos_two_pi_fraction(r, N), sign * norm * sin_two_pi_fraction(r, N));
    });
}

void centred_fourier_along(std::span<Complex> state, const SolutionGrid& grid, const MomentumGrid& momentum,
                           int dim, Direction direction) {
    const std::size_t N = grid.points_per_dim;
    const double norm = 1.0 / std::sqrt(static_cast<double>(N));
    const auto& kappa = momentum.values[dim];
    apply_along(state, N, grid.dims, dim, [&](std::size_t m, std::size_t n) {
        // forward element (m, n) = exp(-i kappa_m x_n); inverse uses the conjugate transpose
        if (direction == Direction::forward) return std::polar(norm, -kappa[m] * grid.coordinate(dim, n));
        return std::polar(norm, kappa[n] * grid.coordinate(dim, m));
    });
}

void qmoa_mixer(std::span<Complex> state, std::size_t N, std::span<const double> times,
                std::span<const CirculantGraph> graphs) {
    const int dims = static_cast<int>(graphs.size());
    std::vector<std::vector<double>> lambda;
    for (const auto& g : graphs) lambda.push_back(circulant_eigenvalues(g));
    for (int d = 0; d < dims; ++d) dft_along(state, N, dims, d, Direction::forward);
    for (std::size_t k = 0; k < state.size(); ++k) {
        double angle = 0.0;
        std::size_t rest = k;
        for (int d = 0; d < dims; ++d) {
            angle += times[d] * lambda[d][rest % N];
            rest /= N;
        }
        state[k] *= Complex(std::cos(angle), -std::sin(angle));
    }
    for (int d = 0; d < dims; ++d) dft_along(state, N, dims, d, Direction::inverse);
}

void qowe_mixer(std::span<Complex> state, const SolutionGrid& grid, const MomentumGrid& momentum,
                std::span<const double> times) {
    const std::size_t N = grid.points_per_dim;
    for (int d = 0; d < grid.dims; ++d) centred_fourier_along(state, grid, momentum, d, Direction::forward);
    for (std::size_t k = 0; k < state.size(); ++k) {
        double angle = 0.0;
        std::size_t rest = k;
        for (int d = 0; d < grid.dims; ++d) {
            const double kappa = momentum.values[d][rest % N];
            angle += times[d] * kappa * kappa;
            rest /= N;
        }
        state[k] *= Complex(std::cos(angle), -std::sin(angle));
    }
    for (int d = 0; d < grid.dims; ++d) centred_fourier_along(state, grid, momentum, d, Direction::inverse);
}

}  // namespace qmoa::reference
