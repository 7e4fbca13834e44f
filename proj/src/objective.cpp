#include "qmoa/objective.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <stdexcept>
#include <string>

namespace qmoa {

std::size_t ObjectiveTable::rank_of(double v) const {
    const auto it = std::lower_bound(unique_sorted_values.begin(), unique_sorted_values.end(), v);
    if (it == unique_sorted_values.end() || *it != v) {
        throw std::invalid_argument("rank_of: value is not in the objective table");
    }
    return static_cast<std::size_t>(it - unique_sorted_values.begin()) + 1;
}

ObjectiveTable make_objective_table(std::vector<double> values) {
    if (values.empty()) throw std::invalid_argument("objective table must not be empty");
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (!std::isfinite(values[k])) {
            throw std::invalid_argument("objective value at k=" + std::to_string(k) + " is not finite");
        }
    }
    ObjectiveTable t;
    t.values = std::move(values);
    const auto minmax = std::minmax_element(t.values.begin(), t.values.end());
    t.min_value = *minmax.first;
    t.max_value = *minmax.second;
    t.argmin_index = static_cast<std::size_t>(minmax.first - t.values.begin());

    t.unique_sorted_values = t.values;
    std::sort(t.unique_sorted_values.begin(), t.unique_sorted_values.end());
    t.unique_sorted_values.erase(std::unique(t.unique_sorted_values.begin(), t.unique_sorted_values.end()),
                                 t.unique_sorted_values.end());

    t.value_index.resize(t.values.size());
    const auto& u = t.unique_sorted_values;
    for (std::size_t k = 0; k < t.values.size(); ++k) {
        t.value_index[k] =
            static_cast<std::uint32_t>(std::lower_bound(u.begin(), u.end(), t.values[k]) - u.begin());
    }
    return t;
}

ObjectiveTable build_objective(const SolutionGrid& grid, const ObjectiveFunction& f) {
    std::vector<double> values(grid.total_points);
    const auto n = static_cast<std::ptrdiff_t>(grid.total_points);
#pragma omp parallel
    {
        std::vector<double> x(grid.dims);
#pragma omp for schedule(static)
        for (std::ptrdiff_t k = 0; k < n; ++k) {
            index_to_coords(grid, static_cast<std::size_t>(k), x);
            values[k] = f(x);
        }
    }
    return make_objective_table(std::move(values));
}

void write_objective_csv(std::ostream& out, const SolutionGrid& grid, const ObjectiveTable& table) {
    out << "k";
    for (int d = 0; d < grid.dims; ++d) out << ",x" << d;
    out << ",f\n";
    out << std::setprecision(17);
    std::vector<double> x(grid.dims);
    for (std::size_t k = 0; k < table.size(); ++k) {
        index_to_coords(grid, k, x);
        out << k;
        for (double v : x) out << ',' << v;
        out << ',' << table.values[k] << '\n';
    }
}

}  // namespace qmoa
