#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "qmoa/grid.hpp"

namespace qmoa {

// Undirected circulant graph on N vertices with 0/1 weights: offset j in the
// connection set couples n to n +- j (mod N).
class CirculantGraph {
public:
    CirculantGraph(std::size_t size, std::vector<std::size_t> connection_set);

    static CirculantGraph complete(std::size_t size);
    static CirculantGraph cycle(std::size_t size);
    static CirculantGraph banded(std::size_t size, std::size_t half_width);

    std::size_t size() const { return size_; }
    const std::vector<std::size_t>& connection_set() const { return offsets_; }
    std::size_t degree() const;
    bool is_complete() const;
    std::string describe() const;

    // first row of the adjacency matrix
    std::vector<double> adjacency_row() const;

    bool operator==(const CirculantGraph&) const = default;

private:
    std::size_t size_;
    std::vector<std::size_t> offsets_;
};

// Lambda_n = sum_j 2 cos(2 pi n j / N), with the N/2 offset counted once.
std::vector<double> circulant_eigenvalues(const CirculantGraph& graph);

// cos(2 pi r / N) with exact values at multiples of N/4 (also used by the
// reference DFT).
double cos_two_pi_fraction(std::size_t r, std::size_t n);
double sin_two_pi_fraction(std::size_t r, std::size_t n);

// Centred momentum grid conjugate to a SolutionGrid.
struct MomentumGrid {
    std::vector<double> kappa_0;
    std::vector<double> delta_kappa;
    std::vector<std::vector<double>> values;
};

MomentumGrid make_momentum_grid(const SolutionGrid& grid);

}  // namespace qmoa
