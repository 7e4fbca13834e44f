#include "qmoa/harness/plot_data.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "qmoa/metrics.hpp"

namespace qmoa::harness {
namespace {

std::string fmt(double v) {
    std::ostringstream s;
    s << std::setprecision(17) << v;
    return s.str();
}

std::string series_label(const Table& t, std::size_t row, bool with_dims) {
    std::string s = t.at(row, "algorithm");
    if (t.has("mixer") && t.at(row, "mixer") != s) s += ":" + t.at(row, "mixer");
    s += ":" + t.at(row, "function");
    if (with_dims) s += ":D=" + t.at(row, "dims") + ":N=" + t.at(row, "points_per_dim");
    return s;
}

void require(const Table& t, std::initializer_list<const char*> cols, const std::string& kind) {
    for (const char* c : cols) {
        if (!t.has(c)) throw std::invalid_argument("summary lacks column '" + std::string(c) + "' needed by " + kind);
    }
}

void add(Table& out, const std::string& series, const std::string& x, double y, double err) {
    out.rows.push_back({series, x, fmt(y), fmt(err)});
}

void metric_vs_p(const Table& s, Table& out, const std::string& metric) {
    for (std::size_t i = 0; i < s.rows.size(); ++i) {
        const std::string label = series_label(s, i, true);
        add(out, label, s.at(i, "p"), s.number(i, metric + "_mean"), s.number(i, metric + "_std"));
    }
    for (std::size_t i = 0; i < s.rows.size(); ++i) {
        add(out, series_label(s, i, true) + ":best", s.at(i, "p"), s.number(i, "best_" + metric), 0.0);
    }
}

}  // namespace

const std::vector<std::string>& plot_kinds() {
    static const std::vector<std::string> kinds{"mean_error", "amplification", "bars", "scaling", "speedup"};
    return kinds;
}

std::vector<NamedFit> scaling_fits(const Table& s) {
    require(s, {"algorithm", "function", "dims", "p", "max_amplification_mean"}, "scaling");
    std::map<std::string, std::vector<ScalingPoint>> groups;
    std::vector<std::string> order;
    for (std::size_t i = 0; i < s.rows.size(); ++i) {
        const auto label = series_label(s, i, false);
        if (!groups.count(label)) order.push_back(label);
        groups[label].push_back({std::stoi(s.at(i, "p")), std::stoi(s.at(i, "dims")), s.number(i, "max_amplification_mean")});
    }
    std::vector<NamedFit> out;
    for (const auto& label : order) {
        const auto& pts = groups[label];
        NamedFit nf;
        nf.series = label;
        nf.fit = fit_scaling(pts);
        std::set<int> dims;
        for (const auto& pt : pts) {
            dims.insert(pt.dims);
            nf.max_p = std::max(nf.max_p, pt.p);
        }
        nf.dims.assign(dims.begin(), dims.end());
        out.push_back(std::move(nf));
    }
    return out;
}

Table plot_table(const Table& s, const std::string& kind) {
    if (s.rows.empty()) throw std::invalid_argument("summary is empty; nothing to plot");
    Table out;
    out.columns = {"series", "x", "y", "y_err"};
    if (kind == "mean_error") {
        require(s, {"algorithm", "function", "p", "mean_error_mean"}, kind);
        metric_vs_p(s, out, "mean_error");
    } else if (kind == "amplification") {
        require(s, {"algorithm", "function", "dims", "points_per_dim", "p", "max_amplification_mean"}, kind);
        metric_vs_p(s, out, "max_amplification");
        // unstructured-search reference for every problem size present
        std::map<std::size_t, int> max_p;
        for (std::size_t i = 0; i < s.rows.size(); ++i) {
            const auto N = std::stoul(s.at(i, "points_per_dim"));
            const int D = std::stoi(s.at(i, "dims"));
            std::size_t K = 1;
            for (int d = 0; d < D; ++d) K *= N;
            max_p[K] = std::max(max_p[K], std::stoi(s.at(i, "p")));
        }
        for (const auto& [K, pmax] : max_p) {
            for (int p = 0; p <= pmax; ++p) add(out, "rdgs:K=" + std::to_string(K), std::to_string(p), rdgs_amplification(p, K), 0.0);
        }
    } else if (kind == "bars") {
        require(s, {"algorithm", "function", "p", "mean_error_mean"}, kind);
        // deepest p of each (series, function)
        std::map<std::string, std::size_t> last;
        std::vector<std::string> order;
        for (std::size_t i = 0; i < s.rows.size(); ++i) {
            const auto label = series_label(s, i, true);
            auto it = last.find(label);
            if (it == last.end()) {
                order.push_back(label);
                last[label] = i;
            } else if (std::stoi(s.at(i, "p")) > std::stoi(s.at(it->second, "p"))) {
                it->second = i;
            }
        }
        for (const auto& label : order) {
            const std::size_t i = last[label];
            std::string algo = s.at(i, "algorithm");
            if (s.has("mixer") && s.at(i, "mixer") != algo) algo += ":" + s.at(i, "mixer");
            add(out, algo, s.at(i, "function"), s.number(i, "mean_error_mean"), s.number(i, "mean_error_std"));
        }
    } else if (kind == "scaling") {
        for (std::size_t i = 0; i < s.rows.size(); ++i) {
            add(out, series_label(s, i, false) + ":D=" + s.at(i, "dims"), s.at(i, "p"),
                s.number(i, "max_amplification_mean"), s.number(i, "max_amplification_std"));
        }
        for (const auto& nf : scaling_fits(s)) {
            for (int D : nf.dims) {
                constexpr int samples = 50;
                for (int k = 0; k < samples; ++k) {
                    const double p = 1.0 + (nf.max_p - 1.0) * k / (samples - 1.0);
                    const double y = nf.fit.C * std::pow(p, nf.fit.alpha * D);
                    add(out, nf.series + ":fit:D=" + std::to_string(D), fmt(p), y, 0.0);
                }
            }
        }
    } else if (kind == "speedup") {
        require(s, {"function", "dims", "speedup_mean", "speedup_std"}, kind);
        for (std::size_t i = 0; i < s.rows.size(); ++i) {
            if (s.at(i, "speedup_mean").empty()) continue;
            add(out, s.at(i, "function"), s.at(i, "dims"), s.number(i, "speedup_mean"), s.number(i, "speedup_std"));
        }
    } else {
        throw std::invalid_argument("unknown plot kind '" + kind + "'");
    }
    return out;
}

std::vector<std::filesystem::path> emit_plot_data(const Table& summary, const std::string& kind,
                                                  const std::filesystem::path& dir) {
    const Table t = plot_table(summary, kind);
    std::filesystem::create_directories(dir);
    std::vector<std::filesystem::path> written;
    const auto path = dir / (kind + ".csv");
    {
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot write " + path.string());
        write_csv(out, t);
    }
    written.push_back(path);
    if (kind == "scaling") {
        Table fits;
        fits.columns = {"series", "alpha", "alpha_stddev", "C", "log2_C_stddev"};
        for (const auto& nf : scaling_fits(summary)) {
            fits.rows.push_back({nf.series, fmt(nf.fit.alpha), fmt(nf.fit.alpha_stddev), fmt(nf.fit.C),
                                 fmt(nf.fit.log2_C_stddev)});
        }
        const auto fpath = dir / "scaling_fit.csv";
        std::ofstream out(fpath);
        if (!out) throw std::runtime_error("cannot write " + fpath.string());
        write_csv(out, fits);
        written.push_back(fpath);
    }
    return written;
}

}  // namespace qmoa::harness
