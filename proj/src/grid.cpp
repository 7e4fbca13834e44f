#include "qmoa/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qmoa {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

int log2_exact(std::size_t n) {
    if (!is_power_of_two(n)) {
        throw std::invalid_argument("log2_exact: " + std::to_string(n) + " is not a power of two");
    }
    int bits = 0;
    while ((std::size_t{1} << bits) < n) ++bits;
    return bits;
}

double SolutionGrid::coordinate(int dim, std::size_t n) const {
    // Pin the last inclusive point to the declared bound so that round-off in
    // n * spacing never moves it.
    if (endpoints == Endpoints::inclusive && n + 1 == points_per_dim) return upper[dim];
    return lower[dim] + static_cast<double>(n) * spacing[dim];
}

int SolutionGrid::qubits() const { return dims * log2_exact(points_per_dim); }

std::size_t SolutionGrid::stride(int dim) const {
    std::size_t s = 1;
    for (int d = 0; d < dim; ++d) s *= points_per_dim;
    return s;
}

SolutionGrid make_grid(std::span<const double> lower, std::span<const double> upper,
                       std::size_t points_per_dim, Endpoints endpoints, int qubit_cap) {
    if (lower.empty() || lower.size() != upper.size()) {
        throw std::invalid_argument("make_grid: lower and upper must be non-empty and equal length");
    }
    if (points_per_dim < 2 || !is_power_of_two(points_per_dim)) {
        throw std::invalid_argument("make_grid: points per dimension must be a power of two >= 2, got " +
                                    std::to_string(points_per_dim));
    }
    SolutionGrid grid;
    grid.dims = static_cast<int>(lower.size());
    grid.points_per_dim = points_per_dim;
    grid.endpoints = endpoints;
    const int qubits = grid.dims * log2_exact(points_per_dim);
    if (qubits > qubit_cap) {
        throw std::invalid_argument("make_grid: D*log2(N) = " + std::to_string(qubits) +
                                    " qubits exceeds the cap of " + std::to_string(qubit_cap));
    }
    const double intervals = endpoints == Endpoints::inclusive ? static_cast<double>(points_per_dim - 1)
                                                               : static_cast<double>(points_per_dim);
    for (int d = 0; d < grid.dims; ++d) {
        if (!(upper[d] > lower[d]) || !std::isfinite(lower[d]) || !std::isfinite(upper[d])) {
            throw std::invalid_argument("make_grid: bounds for dimension " + std::to_string(d) +
                                        " must be finite with upper > lower");
        }
        grid.lower.push_back(lower[d]);
        grid.upper.push_back(upper[d]);
        grid.spacing.push_back((upper[d] - lower[d]) / intervals);
    }
    grid.total_points = std::size_t{1} << qubits;
    return grid;
}

std::vector<std::size_t> index_to_digits(const SolutionGrid& grid, std::size_t k) {
    if (k >= grid.total_points) {
        throw std::out_of_range("index " + std::to_string(k) + " outside grid of " +
                                std::to_string(grid.total_points) + " points");
    }
    std::vector<std::size_t> digits(grid.dims);
    for (int d = 0; d < grid.dims; ++d) {
        digits[d] = k % grid.points_per_dim;
        k /= grid.points_per_dim;
    }
    return digits;
}

std::size_t digits_to_index(const SolutionGrid& grid, std::span<const std::size_t> digits) {
    if (digits.size() != static_cast<std::size_t>(grid.dims)) {
        throw std::invalid_argument("digits_to_index: expected " + std::to_string(grid.dims) + " digits");
    }
    std::size_t k = 0;
    for (int d = grid.dims - 1; d >= 0; --d) {
        if (digits[d] >= grid.points_per_dim) throw std::out_of_range("digits_to_index: digit out of range");
        k = k * grid.points_per_dim + digits[d];
    }
    return k;
}

void index_to_coords(const SolutionGrid& grid, std::size_t k, std::span<double> out) {
    if (k >= grid.total_points) {
        throw std::out_of_range("index " + std::to_string(k) + " outside grid of " +
                                std::to_string(grid.total_points) + " points");
    }
    for (int d = 0; d < grid.dims; ++d) {
        out[d] = grid.coordinate(d, k % grid.points_per_dim);
        k /= grid.points_per_dim;
    }
}

std::vector<double> index_to_coords(const SolutionGrid& grid, std::size_t k) {
    std::vector<double> x(grid.dims);
    index_to_coords(grid, k, x);
    return x;
}

std::size_t coords_to_index(const SolutionGrid& grid, std::span<const double> x) {
    if (x.size() != static_cast<std::size_t>(grid.dims)) {
        throw std::invalid_argument("coords_to_index: expected " + std::to_string(grid.dims) + " coordinates");
    }
    std::vector<std::size_t> digits(grid.dims);
    for (int d = 0; d < grid.dims; ++d) {
        const double n = std::round((x[d] - grid.lower[d]) / grid.spacing[d]);
        if (n < 0.0 || n > static_cast<double>(grid.points_per_dim - 1)) {
            throw std::out_of_range("coords_to_index: coordinate " + std::to_string(x[d]) +
                                    " outside dimension " + std::to_string(d));
        }
        digits[d] = static_cast<std::size_t>(n);
    }
    return digits_to_index(grid, digits);
}

}  // namespace qmoa
