#pragma once

// Dense reference operators for testing the mixers. Everything here is
// O(K^2) memory or worse; sizes are capped at kDenseOracleCap.

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "qmoa/graphs.hpp"
#include "qmoa/grid.hpp"

namespace qmoa {

inline constexpr std::size_t kDenseOracleCap = 4096;

// exp(-i t A) for a real symmetric A via its eigendecomposition.
Eigen::MatrixXcd dense_walk_oracle(const Eigen::MatrixXd& adjacency, double t);

Eigen::MatrixXd circulant_adjacency(const CirculantGraph& graph);
Eigen::MatrixXd complete_adjacency(std::size_t vertices);
Eigen::MatrixXd hypercube_adjacency(int qubits);

// sum_d I (x) ... (x) A_d (x) ... (x) I, with dimension 0 least significant.
Eigen::MatrixXd kronecker_sum(std::span<const Eigen::MatrixXd> per_dim);

// Lift a 1-D operator acting on dimension `dim` to the full N^D space.
Eigen::MatrixXcd lift_to_dimension(const Eigen::MatrixXcd& op, int dims, int dim);

// N x N matrix with elements (1/sqrt N) exp(-i kappa_m x_n).
Eigen::MatrixXcd centred_fourier_matrix(const SolutionGrid& grid, const MomentumGrid& momentum, int dim);

}  // namespace qmoa
