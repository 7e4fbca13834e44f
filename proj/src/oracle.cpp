#include "qmoa/oracle.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <unsupported/Eigen/KroneckerProduct>

namespace qmoa {

Eigen::MatrixXcd dense_walk_oracle(const Eigen::MatrixXd& adjacency, double t) {
    const auto K = static_cast<std::size_t>(adjacency.rows());
    if (adjacency.rows() != adjacency.cols()) throw std::invalid_argument("dense_walk_oracle: matrix not square");
    if (K > kDenseOracleCap) throw std::invalid_argument("dense_walk_oracle: K exceeds the dense cap");
    if (!adjacency.isApprox(adjacency.transpose(), 0.0) && (adjacency - adjacency.transpose()).norm() > 0.0) {
        throw std::invalid_argument("dense_walk_oracle: adjacency is not symmetric");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(adjacency);
    if (solver.info() != Eigen::Success) throw std::runtime_error("dense_walk_oracle: eigensolver failed");
    Eigen::VectorXcd phases(adjacency.rows());
    for (Eigen::Index i = 0; i < phases.size(); ++i) phases[i] = std::polar(1.0, -t * solver.eigenvalues()[i]);
    const Eigen::MatrixXcd V = solver.eigenvectors().cast<std::complex<double>>();
    return V * phases.asDiagonal() * V.adjoint();
}

Eigen::MatrixXd circulant_adjacency(const CirculantGraph& graph) {
    const auto N = static_cast<Eigen::Index>(graph.size());
    const auto row = graph.adjacency_row();
    Eigen::MatrixXd A(N, N);
    for (Eigen::Index i = 0; i < N; ++i) {
        for (Eigen::Index j = 0; j < N; ++j) A(i, j) = row[static_cast<std::size_t>((j - i + N) % N)];
    }
    return A;
}

Eigen::MatrixXd complete_adjacency(std::size_t vertices) {
    const auto K = static_cast<Eigen::Index>(vertices);
    return Eigen::MatrixXd::Ones(K, K) - Eigen::MatrixXd::Identity(K, K);
}

Eigen::MatrixXd hypercube_adjacency(int qubits) {
    const Eigen::Index K = Eigen::Index{1} << qubits;
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(K, K);
    for (Eigen::Index k = 0; k < K; ++k) {
        for (int q = 0; q < qubits; ++q) A(k, k ^ (Eigen::Index{1} << q)) = 1.0;
    }
    return A;
}

Eigen::MatrixXd kronecker_sum(std::span<const Eigen::MatrixXd> per_dim) {
    const auto D = static_cast<int>(per_dim.size());
    const Eigen::Index N = per_dim[0].rows();
    Eigen::Index K = 1;
    for (int d = 0; d < D; ++d) K *= N;
    Eigen::MatrixXd total = Eigen::MatrixXd::Zero(K, K);
    for (int d = 0; d < D; ++d) {
        // index k = n_0 + N n_1 + ..., so the leftmost Kronecker factor is dimension D-1
        Eigen::MatrixXd term = Eigen::MatrixXd::Identity(1, 1);
        for (int e = D - 1; e >= 0; --e) {
            const Eigen::MatrixXd f = e == d ? per_dim[d] : Eigen::MatrixXd::Identity(N, N);
            term = Eigen::kroneckerProduct(term, f).eval();
        }
        total += term;
    }
    return total;
}

Eigen::MatrixXcd lift_to_dimension(const Eigen::MatrixXcd& op, int dims, int dim) {
    const Eigen::Index N = op.rows();
    Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(1, 1);
    for (int e = dims - 1; e >= 0; --e) {
        const Eigen::MatrixXcd f = e == dim ? op : Eigen::MatrixXcd::Identity(N, N);
        term = Eigen::kroneckerProduct(term, f).eval();
    }
    return term;
}

Eigen::MatrixXcd centred_fourier_matrix(const SolutionGrid& grid, const MomentumGrid& momentum, int dim) {
    const auto N = static_cast<Eigen::Index>(grid.points_per_dim);
    const double norm = 1.0 / std::sqrt(static_cast<double>(N));
    Eigen::MatrixXcd F(N, N);
    for (Eigen::Index m = 0; m < N; ++m) {
        for (Eigen::Index n = 0; n < N; ++n) {
            F(m, n) = std::polar(norm, -momentum.values[dim][m] * grid.coordinate(dim, static_cast<std::size_t>(n)));
        }
    }
    return F;
}

}  // namespace qmoa
