#include "qmoa/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace qmoa {
namespace {

struct BudgetExhausted {};

class CountedObjective {
public:
    CountedObjective(const ScalarObjective& f, long limit) : f_(f), limit_(limit) {}
    double operator()(std::span<const double> x) {
        if (calls_ >= limit_) throw BudgetExhausted{};
        ++calls_;
        return f_(x);
    }
    long calls() const { return calls_; }
    long limit() const { return limit_; }

private:
    const ScalarObjective& f_;
    long limit_;
    long calls_ = 0;
};

using Point = std::vector<double>;

}  // namespace

OptimiserOptions OptimiserOptions::library_defaults() {
    OptimiserOptions o;
    o.max_iterations.reset();
    o.max_evaluations.reset();
    return o;
}

OptimisationResult nelder_mead(const ScalarObjective& f, std::span<const double> x0_in,
                               const OptimiserOptions& options) {
    const std::size_t n = x0_in.size();
    if (n == 0) throw std::invalid_argument("nelder_mead: empty starting point");
    if (!(options.simplex_tolerance > 0.0) || !(options.value_tolerance > 0.0)) {
        throw std::invalid_argument("nelder_mead: tolerances must be positive");
    }
    for (double v : x0_in) {
        if (!std::isfinite(v)) throw std::invalid_argument("nelder_mead: starting point must be finite");
    }
    const double dn = static_cast<double>(n);
    double rho = 1.0, chi = 2.0, psi = 0.5, sigma = 0.5;
    if (options.adaptive) {
        chi = 1.0 + 2.0 / dn;
        psi = 0.75 - 1.0 / (2.0 * dn);
        sigma = 1.0 - 1.0 / dn;
    }

    OptimisationResult result;
    const bool bounded = options.bounds.has_value();
    Point lo, hi;
    if (bounded) {
        if (options.bounds->size() != n) throw std::invalid_argument("nelder_mead: need one bound per parameter");
        for (const auto& b : *options.bounds) {
            if (b.lower > b.upper) throw std::invalid_argument("nelder_mead: lower bound above upper bound");
            lo.push_back(b.lower);
            hi.push_back(b.upper);
        }
    }
    auto clip = [&](Point& x) {
        if (!bounded) return;
        bool moved = false;
        for (std::size_t i = 0; i < n; ++i) {
            const double c = std::clamp(x[i], lo[i], hi[i]);
            moved |= c != x[i];
            x[i] = c;
        }
        if (moved) ++result.clamped;
    };

    Point x0(x0_in.begin(), x0_in.end());
    clip(x0);

    constexpr double nonzdelt = 0.05;
    constexpr double zdelt = 0.00025;
    std::vector<Point> sim(n + 1, x0);
    for (std::size_t k = 0; k < n; ++k) {
        Point& y = sim[k + 1];
        y[k] = y[k] != 0.0 ? (1.0 + nonzdelt) * y[k] : zdelt;
    }
    if (bounded) {
        // reflect vertices that overshoot the upper bound back inside instead of
        // clipping them onto it, which could make the simplex degenerate
        for (auto& v : sim) {
            for (std::size_t i = 0; i < n; ++i) {
                if (v[i] > hi[i]) v[i] = 2.0 * hi[i] - v[i];
                v[i] = std::clamp(v[i], lo[i], hi[i]);
            }
        }
    }

    constexpr long unbounded = std::numeric_limits<long>::max();
    long max_iter = 0, max_fev = 0;
    const long fallback = 200 * static_cast<long>(n);
    if (!options.max_iterations && !options.max_evaluations) {
        max_iter = max_fev = fallback;
    } else {
        max_iter = options.max_iterations.value_or(unbounded);
        max_fev = options.max_evaluations.value_or(unbounded);
    }

    CountedObjective func(f, max_fev);
    std::vector<double> fsim(n + 1, std::numeric_limits<double>::infinity());

    auto sort_simplex = [&] {
        std::vector<std::size_t> order(n + 1);
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fsim[a] < fsim[b]; });
        std::vector<Point> s2(n + 1);
        std::vector<double> f2(n + 1);
        for (std::size_t i = 0; i <= n; ++i) {
            s2[i] = std::move(sim[order[i]]);
            f2[i] = fsim[order[i]];
        }
        sim = std::move(s2);
        fsim = std::move(f2);
    };

    try {
        for (std::size_t k = 0; k <= n; ++k) {
            fsim[k] = func(sim[k]);
            if (k == 0 && !std::isfinite(fsim[0])) {
                throw std::invalid_argument("nelder_mead: objective is not finite at the starting point");
            }
        }
    } catch (const BudgetExhausted&) {
    }
    sort_simplex();

    long iterations = 1;
    Point xbar(n), xr(n), xe(n), xc(n), xcc(n);
    while (func.calls() < max_fev && iterations < max_iter) {
        try {
            double xspread = 0.0, fspread = 0.0;
            for (std::size_t j = 1; j <= n; ++j) {
                for (std::size_t i = 0; i < n; ++i) xspread = std::max(xspread, std::abs(sim[j][i] - sim[0][i]));
                fspread = std::max(fspread, std::abs(fsim[0] - fsim[j]));
            }
            if (xspread <= options.simplex_tolerance && fspread <= options.value_tolerance) {
                result.converged = true;
                break;
            }

            for (std::size_t i = 0; i < n; ++i) {
                double s = 0.0;
                for (std::size_t j = 0; j < n; ++j) s += sim[j][i];
                xbar[i] = s / dn;
            }
            const Point& worst = sim[n];
            for (std::size_t i = 0; i < n; ++i) xr[i] = (1.0 + rho) * xbar[i] - rho * worst[i];
            clip(xr);
            const double fxr = func(xr);
            bool doshrink = false;

            if (fxr < fsim[0]) {
                for (std::size_t i = 0; i < n; ++i) xe[i] = (1.0 + rho * chi) * xbar[i] - rho * chi * worst[i];
                clip(xe);
                const double fxe = func(xe);
                if (fxe < fxr) {
                    sim[n] = xe;
                    fsim[n] = fxe;
                } else {
                    sim[n] = xr;
                    fsim[n] = fxr;
                }
            } else if (fxr < fsim[n - 1]) {
                sim[n] = xr;
                fsim[n] = fxr;
            } else if (fxr < fsim[n]) {
                for (std::size_t i = 0; i < n; ++i) xc[i] = (1.0 + psi * rho) * xbar[i] - psi * rho * worst[i];
                clip(xc);
                const double fxc = func(xc);
                if (fxc <= fxr) {
                    sim[n] = xc;
                    fsim[n] = fxc;
                } else {
                    doshrink = true;
                }
            } else {
                for (std::size_t i = 0; i < n; ++i) xcc[i] = (1.0 - psi) * xbar[i] + psi * worst[i];
                clip(xcc);
                const double fxcc = func(xcc);
                if (fxcc < fsim[n]) {
                    sim[n] = xcc;
                    fsim[n] = fxcc;
                } else {
                    doshrink = true;
                }
            }
            if (doshrink) {
                for (std::size_t j = 1; j <= n; ++j) {
                    for (std::size_t i = 0; i < n; ++i) sim[j][i] = sim[0][i] + sigma * (sim[j][i] - sim[0][i]);
                    clip(sim[j]);
                    fsim[j] = func(sim[j]);
                }
            }
            ++iterations;
        } catch (const BudgetExhausted&) {
        }
        sort_simplex();
        if (options.trace) options.trace(iterations, fsim[0], sim[0]);
    }

    result.x = sim[0];
    result.value = *std::min_element(fsim.begin(), fsim.end());
    result.evaluations = func.calls();
    result.iterations = iterations;
    return result;
}

}  // namespace qmoa
