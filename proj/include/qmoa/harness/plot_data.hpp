#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "qmoa/harness/summary.hpp"
#include "qmoa/scaling.hpp"

namespace qmoa::harness {

// mean_error | amplification | bars | scaling | speedup
const std::vector<std::string>& plot_kinds();

// Series rows (series, x, y, y_err) derived from a summary table.
Table plot_table(const Table& summary, const std::string& kind);

// Fits per (algorithm, mixer, function) over every (p, D) row of the summary.
struct NamedFit {
    std::string series;
    ScalingFit fit;
    std::vector<int> dims;
    int max_p = 1;
};
std::vector<NamedFit> scaling_fits(const Table& summary);

// Writes <dir>/<kind>.csv (and scaling_fit.csv for the scaling kind); returns
// the files written. Throws on an empty summary or an unknown kind, before
// creating anything.
std::vector<std::filesystem::path> emit_plot_data(const Table& summary, const std::string& kind,
                                                  const std::filesystem::path& dir);

}  // namespace qmoa::harness
