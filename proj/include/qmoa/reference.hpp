#pragma once

// Serial reference implementations. Straight loops, direct O(N^2) DFTs, no
// FFT library and no OpenMP; used only to check the fast paths.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace qmoa {
class CirculantGraph;
struct SolutionGrid;
struct MomentumGrid;
}  // namespace qmoa

namespace qmoa::reference {

using Complex = std::complex<double>;

enum class Direction { forward, inverse };

double norm_squared(std::span<const Complex> state);
double expectation(std::span<const Complex> state, std::span<const double> values);
void phase(std::span<Complex> state, double gamma, std::span<const double> values);
void complete_mix(std::span<Complex> state, double t);
void hypercube_mix(std::span<Complex> state, double t);
void separable_diagonal(std::span<Complex> state, std::size_t points_per_dim,
                        std::span<const std::vector<Complex>> factors, Complex scale = 1.0);

// Unitary DFT, kernel exp(-2 pi i m n / N) forward, along one dimension.
void dft_along(std::span<Complex> state, std::size_t points_per_dim, int dims, int dim, Direction direction);

// Matrix elements (1/sqrt N) exp(-i kappa_m x_n) along one dimension, evaluated directly.
void centred_fourier_along(std::span<Complex> state, const SolutionGrid& grid, const MomentumGrid& momentum,
                           int dim, Direction direction);

void qmoa_mixer(std::span<Complex> state, std::size_t points_per_dim, std::span<const double> times,
                std::span<const CirculantGraph> graphs);
void qowe_mixer(std::span<Complex> state, const SolutionGrid& grid, const MomentumGrid& momentum,
                std::span<const double> times);

}  // namespace qmoa::reference
