#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <span>
#include <vector>

#include "qmoa/state.hpp"

namespace qmoa::test {

inline StateVector random_state(int dims, std::size_t N, std::uint64_t seed) {
    StateVector s(dims, N);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    for (auto& a : s.amplitudes()) a = {g(rng), g(rng)};
    s.normalise();
    return s;
}

inline Eigen::VectorXcd to_eigen(const StateVector& s) {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(s.size()));
    for (std::size_t k = 0; k < s.size(); ++k) v[static_cast<Eigen::Index>(k)] = s[k];
    return v;
}

inline double max_deviation(const StateVector& s, const Eigen::VectorXcd& v) {
    double worst = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k) worst = std::max(worst, std::abs(s[k] - v[static_cast<Eigen::Index>(k)]));
    return worst;
}

inline double max_deviation(std::span<const std::complex<double>> a, std::span<const std::complex<double>> b) {
    double worst = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) worst = std::max(worst, std::abs(a[k] - b[k]));
    return worst;
}

}  // namespace qmoa::test
