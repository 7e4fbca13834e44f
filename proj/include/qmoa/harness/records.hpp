#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qmoa/metrics.hpp"

namespace qmoa::harness {

struct HybridFields {
    bool success = false;
    long fev_qmoa = 0;
    long fev_nelder_mead = 0;
    long fev_assisted = 0;
    int sample_size = 30;
    bool baseline_success = false;
    long baseline_fev = 0;
    int baseline_restarts = 0;
    double speedup = 0.0;
    std::vector<double> found;
};

// One optimised repeat. Everything here is deterministic given the config;
// wall-clock timings go to a separate file so reruns compare byte for byte.
struct ExperimentRecord {
    std::string config_hash;
    std::string kind;
    std::string algorithm;
    std::string mixer;
    std::string function;
    int dims = 0;
    std::size_t points_per_dim = 0;
    int p = 0;
    int repeat = 0;
    std::uint64_t seed = 0;
    std::vector<double> params;
    double expectation = 0.0;
    MetricsRecord metrics;
    long evaluations = 0;
    long iterations = 0;
    bool converged = false;
    // best repeat of its (series, p)
    bool best = false;
    std::vector<double> wavepacket_centres;
    double bound = 0.0;
    std::optional<HybridFields> hybrid;

    // identifies the depth-sweep series the record belongs to
    std::string series_key() const;
};

nlohmann::json to_json(const ExperimentRecord& r);
ExperimentRecord record_from_json(const nlohmann::json& j);

// Lines that fail to parse at the end of the file (an interrupted write) are
// dropped; a bad line elsewhere is an error.
std::vector<ExperimentRecord> read_records(const std::filesystem::path& path);

// Append-only writer; each call writes whole lines and flushes.
class RecordWriter {
public:
    explicit RecordWriter(std::filesystem::path path);
    void append(const std::vector<ExperimentRecord>& records);
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

void write_records(const std::filesystem::path& path, const std::vector<ExperimentRecord>& records);
void write_records_csv(std::ostream& out, const std::vector<ExperimentRecord>& records);

}  // namespace qmoa::harness
