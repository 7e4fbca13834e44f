#include "qmoa/harness/summary.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace qmoa::harness {
namespace {

std::string key_value(const ExperimentRecord& r, const std::string& key) {
    if (key == "kind") return r.kind;
    if (key == "algorithm") return r.algorithm;
    if (key == "mixer") return r.mixer;
    if (key == "function") return r.function;
    if (key == "dims") return std::to_string(r.dims);
    if (key == "points_per_dim") return std::to_string(r.points_per_dim);
    if (key == "p") return std::to_string(r.p);
    if (key == "repeat") return std::to_string(r.repeat);
    if (key == "config_hash") return r.config_hash;
    throw std::invalid_argument("cannot group by '" + key + "'");
}

std::string fmt(double v) {
    std::ostringstream s;
    s << std::setprecision(17) << v;
    return s.str();
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

struct Metric {
    const char* name;
    double (*get)(const ExperimentRecord&);
};

const Metric kMetrics[] = {
    {"expectation", [](const ExperimentRecord& r) { return r.expectation; }},
    {"mean_error", [](const ExperimentRecord& r) { return r.metrics.mean_error; }},
    {"statistical_distance", [](const ExperimentRecord& r) { return r.metrics.statistical_distance; }},
    {"max_amplification", [](const ExperimentRecord& r) { return r.metrics.max_amplification; }},
    {"max_amplified_rank", [](const ExperimentRecord& r) { return static_cast<double>(r.metrics.max_amplified_rank); }},
    {"evaluations", [](const ExperimentRecord& r) { return static_cast<double>(r.evaluations); }},
};

const Metric kHybridMetrics[] = {
    {"speedup", [](const ExperimentRecord& r) { return r.hybrid->speedup; }},
    {"fev_assisted", [](const ExperimentRecord& r) { return static_cast<double>(r.hybrid->fev_assisted); }},
    {"fev_qmoa", [](const ExperimentRecord& r) { return static_cast<double>(r.hybrid->fev_qmoa); }},
    {"baseline_fev", [](const ExperimentRecord& r) { return static_cast<double>(r.hybrid->baseline_fev); }},
};

}  // namespace

bool Table::has(const std::string& column) const {
    return std::find(columns.begin(), columns.end(), column) != columns.end();
}

std::size_t Table::index(const std::string& column) const {
    const auto it = std::find(columns.begin(), columns.end(), column);
    if (it == columns.end()) throw std::invalid_argument("table has no column '" + column + "'");
    return static_cast<std::size_t>(it - columns.begin());
}

const std::string& Table::at(std::size_t row, const std::string& column) const { return rows.at(row).at(index(column)); }

double Table::number(std::size_t row, const std::string& column) const {
    const std::string& s = at(row, column);
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("column '" + column + "' row " + std::to_string(row) + " is not a number: '" + s + "'");
    }
}

void write_csv(std::ostream& out, const Table& table) {
    for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << csv_field(table.columns[i]);
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(row[i]);
        out << '\n';
    }
}

Table read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    Table t;
    std::string line;
    if (!std::getline(in, line)) return t;
    t.columns = split_csv_line(line);
    for (std::size_t n = 2; std::getline(in, line); ++n) {
        if (line.empty()) continue;
        auto row = split_csv_line(line);
        if (row.size() != t.columns.size()) {
            throw std::runtime_error(path.string() + ":" + std::to_string(n) + ": expected " +
                                     std::to_string(t.columns.size()) + " fields");
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

const std::vector<std::string>& default_group_by() {
    static const std::vector<std::string> keys{"algorithm", "mixer", "function", "dims", "points_per_dim", "p"};
    return keys;
}

Moments population_moments(const std::vector<double>& xs) {
    if (xs.empty()) throw std::invalid_argument("moments of an empty group");
    // Welford: a constant group gives exactly its value and a zero spread
    double mean = 0.0, m2 = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double delta = xs[i] - mean;
        mean += delta / static_cast<double>(i + 1);
        m2 += delta * (xs[i] - mean);
    }
    return {mean, std::sqrt(std::max(m2, 0.0) / static_cast<double>(xs.size()))};
}

Table summarise(const std::vector<ExperimentRecord>& records, const std::vector<std::string>& group_by) {
    if (records.empty()) throw std::invalid_argument("summarise: no records");
    if (group_by.empty()) throw std::invalid_argument("summarise: no group-by keys");
    std::vector<std::vector<std::string>> order;
    std::map<std::vector<std::string>, std::vector<const ExperimentRecord*>> groups;
    for (const auto& r : records) {
        std::vector<std::string> key;
        for (const auto& k : group_by) key.push_back(key_value(r, k));
        auto& g = groups[key];
        if (g.empty()) order.push_back(key);
        g.push_back(&r);
    }
    const bool hybrid = std::any_of(records.begin(), records.end(), [](const auto& r) { return r.hybrid.has_value(); });

    Table t;
    t.columns = group_by;
    t.columns.push_back("count");
    for (const auto& m : kMetrics) {
        t.columns.push_back(std::string(m.name) + "_mean");
        t.columns.push_back(std::string(m.name) + "_std");
    }
    for (const char* c : {"best_repeat", "best_expectation", "best_mean_error", "best_max_amplification",
                          "best_max_amplified_rank"}) {
        t.columns.push_back(c);
    }
    if (hybrid) {
        for (const auto& m : kHybridMetrics) {
            t.columns.push_back(std::string(m.name) + "_mean");
            t.columns.push_back(std::string(m.name) + "_std");
        }
        for (const char* c : {"speedup_of_means", "success_rate", "baseline_success_rate"}) t.columns.push_back(c);
    }

    for (const auto& key : order) {
        const auto& g = groups[key];
        std::vector<std::string> row = key;
        row.push_back(std::to_string(g.size()));
        for (const auto& m : kMetrics) {
            std::vector<double> xs;
            for (const auto* r : g) xs.push_back(m.get(*r));
            const auto mo = population_moments(xs);
            row.push_back(fmt(mo.mean));
            row.push_back(fmt(mo.stddev));
        }
        const auto* best = *std::min_element(g.begin(), g.end(), [](const auto* a, const auto* b) {
            return a->expectation < b->expectation || (a->expectation == b->expectation && a->repeat < b->repeat);
        });
        row.push_back(std::to_string(best->repeat));
        row.push_back(fmt(best->expectation));
        row.push_back(fmt(best->metrics.mean_error));
        row.push_back(fmt(best->metrics.max_amplification));
        row.push_back(std::to_string(best->metrics.max_amplified_rank));
        if (hybrid) {
            const bool all_hybrid = std::all_of(g.begin(), g.end(), [](const auto* r) { return r->hybrid.has_value(); });
            if (!all_hybrid) {
                row.insert(row.end(), 2 * std::size(kHybridMetrics) + 3, "");
            } else {
                for (const auto& m : kHybridMetrics) {
                    std::vector<double> xs;
                    for (const auto* r : g) xs.push_back(m.get(*r));
                    const auto mo = population_moments(xs);
                    row.push_back(fmt(mo.mean));
                    row.push_back(fmt(mo.stddev));
                }
                double base = 0.0, assisted = 0.0, ok = 0.0, bok = 0.0;
                for (const auto* r : g) {
                    base += static_cast<double>(r->hybrid->baseline_fev);
                    assisted += static_cast<double>(r->hybrid->fev_assisted);
                    ok += r->hybrid->success ? 1.0 : 0.0;
                    bok += r->hybrid->baseline_success ? 1.0 : 0.0;
                }
                const double n = static_cast<double>(g.size());
                row.push_back(fmt(assisted > 0.0 ? base / assisted : 0.0));
                row.push_back(fmt(ok / n));
                row.push_back(fmt(bok / n));
            }
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

}  // namespace qmoa::harness
