#include "qmoa/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace qmoa {

double mean_error(double q_expectation, const ObjectiveTable& table) {
    const double range = table.max_value - table.min_value;
    if (!(range > 0.0)) throw std::invalid_argument("mean_error: objective is constant on the grid");
    return (q_expectation - table.min_value) / range;
}

double statistical_distance(const StateVector& state, const SolutionGrid& grid, const ObjectiveTable& table) {
    if (state.size() != grid.total_points || table.size() != grid.total_points) {
        throw std::invalid_argument("statistical_distance: state, grid and table sizes differ");
    }
    const auto best = index_to_coords(grid, table.argmin_index);
    std::vector<double> x(static_cast<std::size_t>(grid.dims));
    double weighted = 0.0, farthest = 0.0;
    for (std::size_t k = 0; k < grid.total_points; ++k) {
        index_to_coords(grid, k, x);
        double d2 = 0.0;
        for (int d = 0; d < grid.dims; ++d) d2 += (x[d] - best[d]) * (x[d] - best[d]);
        const double dist = std::sqrt(d2);
        farthest = std::max(farthest, dist);
        weighted += dist * state.probability(k);
    }
    return farthest > 0.0 ? weighted / farthest : 0.0;
}

std::pair<double, std::size_t> max_amplification(const StateVector& state) {
    std::size_t arg = 0;
    double best = -1.0;
    for (std::size_t k = 0; k < state.size(); ++k) {
        const double p = state.probability(k);
        if (p > best) {
            best = p;
            arg = k;
        }
    }
    return {best * static_cast<double>(state.size()), arg};
}

double rdgs_probability(int p, std::size_t K) {
    if (p < 0 || K < 1) throw std::invalid_argument("rdgs_probability: need p >= 0 and K >= 1");
    const double theta = std::asin(std::sqrt(1.0 / static_cast<double>(K)));
    const double s = std::sin((p + 0.5) * 2.0 * theta);
    return s * s;
}

MetricsRecord compute_metrics(const StateVector& state, const SolutionGrid& grid, const ObjectiveTable& table) {
    MetricsRecord m;
    m.mean_error = mean_error(expectation(state, table), table);
    m.statistical_distance = statistical_distance(state, grid, table);
    const auto [amp, k] = max_amplification(state);
    m.max_amplification = amp;
    m.max_amplified_index = k;
    m.max_amplified_rank = table.rank_of_index(k);
    return m;
}

}  // namespace qmoa
