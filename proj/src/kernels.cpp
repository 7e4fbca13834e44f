#include "qmoa/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace qmoa::kernels {
namespace {

// Below this size the fork/join cost outweighs the loop.
constexpr std::ptrdiff_t kParallelThreshold = 1 << 14;

std::ptrdiff_t ssize(std::span<const Complex> s) { return static_cast<std::ptrdiff_t>(s.size()); }

}  // namespace

double norm_squared(std::span<const Complex> state) {
    const auto n = ssize(state);
    double sum = 0.0;
#pragma omp parallel for reduction(+ : sum) schedule(static) if (n >= kParallelThreshold)
    for (std::ptrdiff_t k = 0; k < n; ++k) sum += std::norm(state[k]);
    return sum;
}

double expectation(std::span<const Complex> state, std::span<const double> values) {
    const auto n = ssize(state);
    double sum = 0.0;
#pragma omp parallel for reduction(+ : sum) schedule(static) if (n >= kParallelThreshold)
    for (std::ptrdiff_t k = 0; k < n; ++k) sum += values[k] * std::norm(state[k]);
    return sum;
}

void scale(std::span<Complex> state, Complex factor) {
    const auto n = ssize(state);
#pragma omp parallel for schedule(static) if (n >= kParallelThreshold)
    for (std::ptrdiff_t k = 0; k < n; ++k) state[k] *= factor;
}

void phase(std::span<Complex> state, double gamma, std::span<const double> values) {
    const auto n = ssize(state);
#pragma omp parallel for schedule(static) if (n >= kParallelThreshold)
    for (std::ptrdiff_t k = 0; k < n; ++k) state[k] *= std::polar(1.0, -gamma * values[k]);
}

void phase_by_value(std::span<Complex> state, double gamma, std::span<const double> unique,
                    std::span<const std::uint32_t> index, std::vector<Complex>& scratch) {
    const auto u = static_cast<std::ptrdiff_t>(unique.size());
    scratch.resize(unique.size());
#pragma omp parallel for schedule(static) if (u >= kParallelThreshold)
    for (std::ptrdiff_t j = 0; j < u; ++j) scratch[j] = std::polar(1.0, -gamma * unique[j]);
    const auto n = ssize(state);
#pragma omp parallel for schedule(static) if (n >= kParallelThreshold)
    for (std::ptrdiff_t k = 0; k < n; ++k) state[k] *= scratch[index[k]];
}

void complete_mix(std::span<Complex> state, double t) {
    const auto n = ssize(state);
    double re = 0.0, im = 0.0;
#pragma omp parallel for reduction(+ : re, im) schedule(static) if (n >= kParallelThreshold)
    for (std::ptrdiff_t k = 0; k < n; ++k) {
        re += state[k].real();
        im += state[k].imag();
    }
    const double K = static_cast<double>(n);
    const Complex shift = (std::polar(1.0, -t * K) - 1.0) * Complex(re / K, im / K);
    const Complex global = std::polar(1.0, t);
#pragma omp parallel for schedule(static) if (n >= kParallelThreshold)
    for (std::ptrdiff_t k = 0; k < n; ++k) state[k] = global * (state[k] + shift);
}

void hypercube_mix(std::span<Complex> state, double t) {
    const std::size_t n = state.size();
    if (n == 0 || (n & (n - 1)) != 0) throw std::invalid_argument("hypercube_mix: size must be a power of two");
    const double c = std::cos(t);
    const Complex ms(0.0, -std::sin(t));
    const auto pairs = static_cast<std::ptrdiff_t>(n / 2);
    for (std::size_t bit = 1; bit < n; bit <<= 1) {
        const std::size_t low = bit - 1;
#pragma omp parallel for schedule(static) if (pairs >= kParallelThreshold)
        for (std::ptrdiff_t j = 0; j < pairs; ++j) {
            const std::size_t uj = static_cast<std::size_t>(j);
            const std::size_t a = ((uj & ~low) << 1) | (uj & low);
            const std::size_t b = a | bit;
            const Complex xa = state[a];
            const Complex xb = state[b];
            state[a] = c * xa + ms * xb;
            state[b] = c * xb + ms * xa;
        }
    }
}

void separable_diagonal(std::span<Complex> state, std::size_t points_per_dim,
                        std::span<const std::vector<Complex>> factors, Complex scale) {
    const std::size_t N = points_per_dim;
    const std::size_t D = factors.size();
    const auto lines = static_cast<std::ptrdiff_t>(state.size() / N);
    const std::vector<Complex>& first = factors[0];
#pragma omp parallel for schedule(static) if (static_cast<std::ptrdiff_t>(state.size()) >= kParallelThreshold)
    for (std::ptrdiff_t line = 0; line < lines; ++line) {
        Complex outer = scale;
        std::size_t rest = static_cast<std::size_t>(line);
        for (std::size_t d = 1; d < D; ++d) {
            outer *= factors[d][rest % N];
            rest /= N;
        }
        Complex* row = state.data() + static_cast<std::size_t>(line) * N;
        for (std::size_t n = 0; n < N; ++n) row[n] *= outer * first[n];
    }
}

}  // namespace qmoa::kernels
