#include "qmoa/scaling.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace qmoa {

double ScalingFit::predict(int p, int dims) const { return C * std::pow(static_cast<double>(p), alpha * dims); }

ScalingFit fit_scaling(const std::vector<ScalingPoint>& data) {
    const auto n = static_cast<Eigen::Index>(data.size());
    if (n < 3) throw std::invalid_argument("fit_scaling: need at least 3 points");
    Eigen::MatrixXd X(n, 2);
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& pt = data[static_cast<std::size_t>(i)];
        if (pt.p < 1 || pt.dims < 1) throw std::invalid_argument("fit_scaling: p and D must be at least 1");
        if (!(pt.amplification > 0.0)) throw std::invalid_argument("fit_scaling: amplifications must be positive");
        X(i, 0) = 1.0;
        X(i, 1) = pt.dims * std::log2(static_cast<double>(pt.p));
        y(i) = std::log2(pt.amplification);
    }
    if ((X.col(1).array() == X(0, 1)).all()) throw std::invalid_argument("fit_scaling: all D log2 p values are equal");
    const Eigen::Matrix2d xtx = X.transpose() * X;
    const Eigen::Vector2d beta = X.colPivHouseholderQr().solve(y);
    const double ssr = (y - X * beta).squaredNorm();
    const Eigen::Matrix2d cov = (ssr / static_cast<double>(n - 2)) * xtx.inverse();
    if (!std::isfinite(ssr)) throw std::runtime_error("fit_scaling: non-finite residuals");
    ScalingFit fit;
    fit.alpha = beta(1);
    fit.C = std::exp2(beta(0));
    fit.alpha_stddev = std::sqrt(std::max(0.0, cov(1, 1)));
    fit.log2_C_stddev = std::sqrt(std::max(0.0, cov(0, 0)));
    return fit;
}

}  // namespace qmoa
