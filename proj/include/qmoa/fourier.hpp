#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>

namespace qmoa {

enum class FourierDirection { forward, inverse };

// FFTW plans for a D-dimensional N^D array in the grid's index order: one
// plan over all dimensions and one per dimension, each in both directions.
// Transforms are unnormalised (a forward-inverse round trip scales by the
// transform length). Plans are created once; execute() is safe to call
// concurrently on distinct 64-byte aligned buffers.
class FourierPlan {
public:
    FourierPlan(int dims, std::size_t points_per_dim);
    ~FourierPlan();
    FourierPlan(const FourierPlan&) = delete;
    FourierPlan& operator=(const FourierPlan&) = delete;
    FourierPlan(FourierPlan&&) noexcept;
    FourierPlan& operator=(FourierPlan&&) noexcept;

    int dims() const;
    std::size_t points_per_dim() const;

    void transform(std::span<std::complex<double>> data, FourierDirection direction) const;
    void transform_dim(std::span<std::complex<double>> data, int dim, FourierDirection direction) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// Shared plan for (dims, N); created on first use.
const FourierPlan& fourier_plan(int dims, std::size_t points_per_dim);

}  // namespace qmoa
