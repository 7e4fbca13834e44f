#include "qmoa/graphs.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qmoa {

CirculantGraph::CirculantGraph(std::size_t size, std::vector<std::size_t> connection_set)
    : size_(size), offsets_(std::move(connection_set)) {
    if (size_ < 2) throw std::invalid_argument("circulant graph needs at least 2 vertices");
    if (offsets_.empty()) throw std::invalid_argument("circulant graph connection set is empty");
    std::sort(offsets_.begin(), offsets_.end());
    offsets_.erase(std::unique(offsets_.begin(), offsets_.end()), offsets_.end());
    if (offsets_.front() == 0 || offsets_.back() > size_ / 2) {
        throw std::invalid_argument("circulant offsets must lie in 1..floor(N/2)");
    }
}

CirculantGraph CirculantGraph::complete(std::size_t size) { return banded(size, size / 2); }

CirculantGraph CirculantGraph::cycle(std::size_t size) { return CirculantGraph(size, {1}); }

CirculantGraph CirculantGraph::banded(std::size_t size, std::size_t half_width) {
    if (half_width == 0 || half_width > size / 2) {
        throw std::invalid_argument("banded graph half-width must lie in 1..floor(N/2)");
    }
    std::vector<std::size_t> s(half_width);
    for (std::size_t j = 0; j < half_width; ++j) s[j] = j + 1;
    return CirculantGraph(size, std::move(s));
}

std::size_t CirculantGraph::degree() const {
    std::size_t deg = 2 * offsets_.size();
    if (size_ % 2 == 0 && offsets_.back() == size_ / 2) --deg;
    return deg;
}

bool CirculantGraph::is_complete() const { return degree() == size_ - 1; }

std::string CirculantGraph::describe() const {
    if (is_complete()) return "complete";
    if (offsets_.size() == 1 && offsets_[0] == 1) return "cycle";
    bool contiguous = true;
    for (std::size_t j = 0; j < offsets_.size(); ++j) contiguous = contiguous && offsets_[j] == j + 1;
    if (contiguous) return "banded(" + std::to_string(offsets_.size()) + ")";
    std::string s = "offsets(";
    for (std::size_t j = 0; j < offsets_.size(); ++j) s += (j ? "," : "") + std::to_string(offsets_[j]);
    return s + ")";
}

std::vector<double> CirculantGraph::adjacency_row() const {
    std::vector<double> row(size_, 0.0);
    for (std::size_t j : offsets_) {
        row[j] = 1.0;
        row[size_ - j] = 1.0;
    }
    return row;
}

double cos_two_pi_fraction(std::size_t r, std::size_t n) {
    r %= n;
    if (4 * r == n || 4 * r == 3 * n) return 0.0;
    if (r == 0) return 1.0;
    if (2 * r == n) return -1.0;
    return std::cos(2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(n));
}

double sin_two_pi_fraction(std::size_t r, std::size_t n) {
    r %= n;
    if (r == 0 || 2 * r == n) return 0.0;
    if (4 * r == n) return 1.0;
    if (4 * r == 3 * n) return -1.0;
    return std::sin(2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(n));
}

std::vector<double> circulant_eigenvalues(const CirculantGraph& graph) {
    const std::size_t N = graph.size();
    std::vector<double> lambda(N, 0.0);
    if (graph.is_complete()) {
        lambda.assign(N, -1.0);
        lambda[0] = static_cast<double>(N - 1);
        return lambda;
    }
    for (std::size_t n = 0; n < N; ++n) {
        double sum = 0.0;
        for (std::size_t j : graph.connection_set()) {
            const double c = cos_two_pi_fraction(n * j, N);
            sum += (N % 2 == 0 && 2 * j == N) ? c : 2.0 * c;
        }
        lambda[n] = sum;
    }
    return lambda;
}

MomentumGrid make_momentum_grid(const SolutionGrid& grid) {
    MomentumGrid m;
    const auto N = static_cast<long long>(grid.points_per_dim);
    for (int d = 0; d < grid.dims; ++d) {
        const double dk = 2.0 * std::numbers::pi / (static_cast<double>(N) * grid.spacing[d]);
        const double k0 = dk * static_cast<double>(-N + 1 + (N - 1) / 2);
        std::vector<double> values(grid.points_per_dim);
        for (long long n = 0; n < N; ++n) values[n] = k0 + static_cast<double>(n) * dk;
        m.kappa_0.push_back(k0);
        m.delta_kappa.push_back(dk);
        m.values.push_back(std::move(values));
    }
    return m;
}

}  // namespace qmoa
