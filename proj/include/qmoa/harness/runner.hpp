#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "qmoa/harness/config.hpp"
#include "qmoa/harness/records.hpp"

namespace qmoa::harness {

// One warm-start chain: an algorithm (with its mixer) on a function at one D.
struct Series {
    Algorithm algorithm = Algorithm::qmoa;
    std::vector<CirculantGraph> graphs;
    std::string mixer;
    std::string function;
    int dims = 2;
};

std::vector<Series> plan_series(const ExperimentConfig& config);

struct RunOptions {
    // progress lines; nullptr for silence
    std::ostream* log = nullptr;
    // stop after this many newly computed depths (or hybrid repeats); < 0 = no limit
    int max_new_steps = -1;
};

// Runs (or resumes) the experiment in config.output_dir:
//   records.jsonl  one line per repeat, appended as each depth completes
//   records.csv    consolidated table, rewritten at the end
//   timings.jsonl  wall time per step
//   config.json    the semantic config and its hash
// Returns every record of the experiment, including ones loaded on resume.
std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& config, const RunOptions& options = {});

// Seed of the classical-only baseline paired with a hybrid repeat.
std::uint64_t baseline_seed(std::uint64_t hybrid_seed);

}  // namespace qmoa::harness
