#pragma once

#include <span>
#include <vector>

#include "qmoa/fourier.hpp"
#include "qmoa/graphs.hpp"
#include "qmoa/objective.hpp"
#include "qmoa/state.hpp"

namespace qmoa {

// amplitude_k <- exp(-i gamma f_k) amplitude_k. Uses one sincos per distinct
// objective value; `scratch` avoids a per-call allocation in hot loops.
void phase_shift(StateVector& state, double gamma, const ObjectiveTable& table,
                 std::vector<Complex>* scratch = nullptr);

// Separable walk prod_d exp(-i t_d C_d) with circulant C_d, applied as
// DFT^{(x)D}, diagonal exp(-i sum_d t_d Lambda_{d,n_d}), inverse DFT.
class CirculantWalk {
public:
    explicit CirculantWalk(std::vector<CirculantGraph> graphs);

    const std::vector<CirculantGraph>& graphs() const { return graphs_; }
    const std::vector<double>& eigenvalues(int dim) const { return eigenvalues_[dim]; }
    void apply(StateVector& state, std::span<const double> times, const FourierPlan& plan) const;

private:
    std::vector<CirculantGraph> graphs_;
    std::vector<std::vector<double>> eigenvalues_;
};

void qmoa_mixer(StateVector& state, std::span<const double> times, std::span<const CirculantGraph> graphs);

// Complete graph on all K states: e^{it}[I + (e^{-itK} - 1) J/K].
void qaoa_complete_mixer(StateVector& state, double t);

// Hypercube on log2(K) qubits: prod_q (cos t I - i sin t X_q).
void hypercube_mixer(StateVector& state, double t);

// Centred Fourier transform along one dimension: matrix elements
// (1/sqrt N) exp(-i kappa_m x_n), realised as phase * DFT * phase.
void centred_fourier(StateVector& state, int dim, const SolutionGrid& grid, const MomentumGrid& momentum,
                     FourierDirection direction);

// Kinetic mixer F^{-1} exp(-i sum_d t_d kappa_d^2) F with the centred F.
class MomentumWalk {
public:
    explicit MomentumWalk(const SolutionGrid& grid);

    const MomentumGrid& momentum() const { return momentum_; }
    void apply(StateVector& state, std::span<const double> times, const FourierPlan& plan) const;

private:
    std::size_t points_per_dim_;
    MomentumGrid momentum_;
    std::vector<std::vector<Complex>> pre_phase_;
    std::vector<std::vector<Complex>> pre_phase_conj_;
};

void qowe_mixer(StateVector& state, std::span<const double> times, const SolutionGrid& grid);

}  // namespace qmoa
