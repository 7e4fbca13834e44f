#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "qmoa/aligned.hpp"
#include "qmoa/grid.hpp"
#include "qmoa/objective.hpp"
#include "qmoa/rng.hpp"

namespace qmoa {

using Complex = std::complex<double>;
using AmplitudeVector = std::vector<Complex, AlignedAllocator<Complex>>;

inline constexpr double kNormTolerance = 1e-10;

// K = N^D amplitudes in the grid's index order. Shape (D, N) is kept for
// the dimension-wise transforms.
class StateVector {
public:
    StateVector() = default;
    StateVector(int dims, std::size_t points_per_dim);
    explicit StateVector(const SolutionGrid& grid) : StateVector(grid.dims, grid.points_per_dim) {}

    int dims() const { return dims_; }
    std::size_t points_per_dim() const { return points_per_dim_; }
    std::size_t size() const { return amplitudes_.size(); }

    std::span<Complex> amplitudes() { return amplitudes_; }
    std::span<const Complex> amplitudes() const { return amplitudes_; }
    Complex& operator[](std::size_t k) { return amplitudes_[k]; }
    const Complex& operator[](std::size_t k) const { return amplitudes_[k]; }

    double norm_squared() const;
    double probability(std::size_t k) const { return std::norm(amplitudes_[k]); }
    std::vector<double> probabilities() const;
    void normalise();
    bool same_shape(const StateVector& other) const {
        return dims_ == other.dims_ && points_per_dim_ == other.points_per_dim_;
    }

private:
    int dims_ = 0;
    std::size_t points_per_dim_ = 0;
    AmplitudeVector amplitudes_;
};

struct WavepacketSpec {
    std::vector<double> centres;
    std::vector<double> widths;
};

StateVector equal_superposition(std::size_t total_points);
StateVector equal_superposition(const SolutionGrid& grid);
StateVector delta_state(const SolutionGrid& grid, std::size_t k);
StateVector gaussian_wavepacket(const SolutionGrid& grid, const WavepacketSpec& spec);

double expectation(const StateVector& state, const ObjectiveTable& table);

// Inverse-CDF sampler over |amplitude_k|^2; O(K) setup, O(log K) per draw.
class Sampler {
public:
    explicit Sampler(const StateVector& state);
    std::size_t draw(Rng& rng) const;
    std::vector<std::size_t> draw(Rng& rng, std::size_t shots) const;

private:
    std::vector<double> cumulative_;
};

std::vector<std::size_t> sample(const StateVector& state, Rng& rng, std::size_t shots);

// CSV columns: k, re, im, probability
void write_state_csv(std::ostream& out, const StateVector& state);

}  // namespace qmoa
