#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "qmoa/harness/records.hpp"

namespace qmoa::harness {

// Plain string table, the interchange format between summarise and plot-data.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    bool has(const std::string& column) const;
    std::size_t index(const std::string& column) const;
    const std::string& at(std::size_t row, const std::string& column) const;
    double number(std::size_t row, const std::string& column) const;
};

void write_csv(std::ostream& out, const Table& table);
Table read_csv(const std::filesystem::path& path);

const std::vector<std::string>& default_group_by();

struct Moments {
    double mean = 0.0;
    double stddev = 0.0;
};
// mean and population standard deviation; throws on an empty input
Moments population_moments(const std::vector<double>& xs);

// Per group: count, mean and population stddev of every metric, and the
// metrics of the best repeat (lowest <Q>). Hybrid groups also carry the
// ratio of mean costs and the success rates.
Table summarise(const std::vector<ExperimentRecord>& records, const std::vector<std::string>& group_by);

}  // namespace qmoa::harness
