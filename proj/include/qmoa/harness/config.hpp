#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qmoa/ansatz.hpp"
#include "qmoa/grid.hpp"
#include "qmoa/nelder_mead.hpp"

namespace qmoa::harness {

// Bad config contents: the CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class ExperimentKind { depth_sweep, mixer_comparison, degree_sweep, scaling_study, hybrid_study };

std::string to_string(ExperimentKind k);
ExperimentKind parse_kind(const std::string& s);

struct GraphChoice {
    // complete | cycle | banded
    std::string kind = "complete";
    std::size_t half_width = 1;

    CirculantGraph build(std::size_t N) const;
    std::string label(std::size_t N) const;
};

struct HybridSettings {
    int sample_size = 30;
    double epsilon = 1e-4;
    int max_outer_restarts = 50;
    long max_baseline_evaluations = 100000000;
};

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::depth_sweep;
    std::vector<Algorithm> algorithms{Algorithm::qmoa};
    std::vector<std::string> functions;
    std::vector<int> dims{2};
    std::size_t points_per_dim = 16;
    std::vector<int> depths{1};
    int repeats = 10;
    std::uint64_t base_seed = 0;
    OptimiserOptions optimiser;
    GraphChoice graph;
    // degree_sweep: banded half-widths s (s = N/2 is the complete graph)
    std::vector<std::size_t> degrees;
    bool shared_walk_time = false;
    Endpoints endpoints = Endpoints::inclusive;
    int qubit_cap = kDefaultQubitCap;
    HybridSettings hybrid;
    // not part of the hash
    std::filesystem::path output_dir = "runs";
    int workers = 0;

    // canonical JSON of the result-affecting fields, defaults filled in
    nlohmann::json semantic_json() const;
    std::string hash() const;
};

// Throws ConfigError with the offending key.
ExperimentConfig parse_config(const nlohmann::json& j);
nlohmann::json load_config_json(const std::filesystem::path& path);
// "a.b=value"; value is parsed as JSON when possible, else taken as a string
void apply_override(nlohmann::json& j, const std::string& assignment);
void validate(const ExperimentConfig& config);

std::uint64_t fnv1a64(const std::string& bytes);

}  // namespace qmoa::harness
