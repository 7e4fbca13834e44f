#pragma once

#include <vector>

namespace qmoa {

struct ScalingPoint {
    int p = 1;
    int dims = 1;
    double amplification = 1.0;
};

// log2(amp) = log2 C + alpha D log2 p by ordinary least squares. The
// uncertainty is the square root of the alpha entry of s^2 (X^T X)^-1 with
// s^2 = SSR / (n - 2).
struct ScalingFit {
    double alpha = 0.0;
    double C = 1.0;
    double alpha_stddev = 0.0;
    double log2_C_stddev = 0.0;

    double predict(int p, int dims) const;
};

ScalingFit fit_scaling(const std::vector<ScalingPoint>& data);

}  // namespace qmoa
