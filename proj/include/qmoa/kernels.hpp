#pragma once

// Data-parallel statevector kernels (OpenMP). Each has a serial twin in
// reference.hpp that the tests compare against.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace qmoa::kernels {

using Complex = std::complex<double>;

double norm_squared(std::span<const Complex> state);
double expectation(std::span<const Complex> state, std::span<const double> values);
void scale(std::span<Complex> state, Complex factor);

// state_k *= exp(-i gamma values_k)
void phase(std::span<Complex> state, double gamma, std::span<const double> values);

// Same operator, with one sincos per distinct value: values_k = unique[index_k].
void phase_by_value(std::span<Complex> state, double gamma, std::span<const double> unique,
                    std::span<const std::uint32_t> index, std::vector<Complex>& scratch);

// exp(-i t A) for the complete graph on K vertices, via the global mean.
void complete_mix(std::span<Complex> state, double t);

// Product over qubits of (cos t I - i sin t X_q): one butterfly pass per qubit.
void hypercube_mix(std::span<Complex> state, double t);

// state[n_0 + N n_1 + ...] *= scale * prod_d factors[d][n_d]
void separable_diagonal(std::span<Complex> state, std::size_t points_per_dim,
                        std::span<const std::vector<Complex>> factors, Complex scale = 1.0);

}  // namespace qmoa::kernels
