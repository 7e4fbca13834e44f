#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace qmoa {

// Where the last grid point along each dimension sits. Inclusive places it on
// the declared upper bound; exclusive stops one spacing short (periodic grid).
enum class Endpoints { inclusive, exclusive };

inline constexpr int kDefaultQubitCap = 30;

// Discretised D-dimensional box with N points per dimension. Dimension 0 is
// the least significant base-N digit of the vectorised index k.
struct SolutionGrid {
    int dims = 0;
    std::size_t points_per_dim = 0;
    std::vector<double> lower;
    std::vector<double> upper;
    std::vector<double> spacing;
    std::size_t total_points = 0;
    Endpoints endpoints = Endpoints::inclusive;

    double coordinate(int dim, std::size_t n) const;
    int qubits() const;
    std::size_t stride(int dim) const;
};

SolutionGrid make_grid(std::span<const double> lower, std::span<const double> upper,
                       std::size_t points_per_dim, Endpoints endpoints = Endpoints::inclusive,
                       int qubit_cap = kDefaultQubitCap);

std::vector<std::size_t> index_to_digits(const SolutionGrid& grid, std::size_t k);
std::size_t digits_to_index(const SolutionGrid& grid, std::span<const std::size_t> digits);

std::vector<double> index_to_coords(const SolutionGrid& grid, std::size_t k);
void index_to_coords(const SolutionGrid& grid, std::size_t k, std::span<double> out);

// Inverse of index_to_coords for points on the grid; off-grid points snap to
// the nearest grid point. Throws if x lies outside the domain by more than
// half a spacing.
std::size_t coords_to_index(const SolutionGrid& grid, std::span<const double> x);

bool is_power_of_two(std::size_t n);
int log2_exact(std::size_t n);

}  // namespace qmoa
