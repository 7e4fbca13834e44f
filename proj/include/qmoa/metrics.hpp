#pragma once

#include <cstddef>
#include <utility>

#include "qmoa/grid.hpp"
#include "qmoa/objective.hpp"
#include "qmoa/state.hpp"

namespace qmoa {

struct MetricsRecord {
    double mean_error = 0.0;
    double statistical_distance = 0.0;
    double max_amplification = 0.0;
    std::size_t max_amplified_index = 0;
    // 1-based rank of the most amplified solution among the unique values
    std::size_t max_amplified_rank = 1;
};

// (<Q> - min f) / (max f - min f); throws for a constant objective.
double mean_error(double q_expectation, const ObjectiveTable& table);

// Probability-weighted Euclidean distance from the grid minimiser, over the
// largest such distance on the grid.
double statistical_distance(const StateVector& state, const SolutionGrid& grid, const ObjectiveTable& table);

// K max_k |a_k|^2 and the first index attaining it.
std::pair<double, std::size_t> max_amplification(const StateVector& state);

// Restricted-depth Grover success probability sin^2((p + 1/2) 2 asin(1/sqrt K)).
double rdgs_probability(int p, std::size_t K);
inline double rdgs_amplification(int p, std::size_t K) { return static_cast<double>(K) * rdgs_probability(p, K); }

MetricsRecord compute_metrics(const StateVector& state, const SolutionGrid& grid, const ObjectiveTable& table);

}  // namespace qmoa
