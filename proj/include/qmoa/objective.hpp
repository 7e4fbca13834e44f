#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "qmoa/grid.hpp"

namespace qmoa {

using ObjectiveFunction = std::function<double(std::span<const double>)>;

// f evaluated on every grid point, with the ranking metadata used by the
// metrics. Immutable once built.
struct ObjectiveTable {
    std::vector<double> values;
    double min_value = 0.0;
    double max_value = 0.0;
    std::size_t argmin_index = 0;
    std::vector<double> unique_sorted_values;
    // position of values[k] in unique_sorted_values
    std::vector<std::uint32_t> value_index;

    std::size_t size() const { return values.size(); }
    std::size_t unique_count() const { return unique_sorted_values.size(); }
    // 1-based rank over unique values; throws if v is not a table value
    std::size_t rank_of(double v) const;
    std::size_t rank_of_index(std::size_t k) const { return value_index[k] + 1; }
};

// Values must be finite; ties in argmin go to the smallest index.
ObjectiveTable make_objective_table(std::vector<double> values);

// f must be safe to call concurrently.
ObjectiveTable build_objective(const SolutionGrid& grid, const ObjectiveFunction& f);

// CSV columns: k, x0..x{D-1}, f
void write_objective_csv(std::ostream& out, const SolutionGrid& grid, const ObjectiveTable& table);

}  // namespace qmoa
