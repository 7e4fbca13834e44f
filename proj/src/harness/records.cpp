#include "qmoa/harness/records.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <stdexcept>

namespace qmoa::harness {

using nlohmann::json;

std::string ExperimentRecord::series_key() const {
    return algorithm + "|" + mixer + "|" + function + "|" + std::to_string(dims) + "|" +
           std::to_string(points_per_dim);
}

json to_json(const ExperimentRecord& r) {
    json j;
    j["config_hash"] = r.config_hash;
    j["kind"] = r.kind;
    j["algorithm"] = r.algorithm;
    j["mixer"] = r.mixer;
    j["function"] = r.function;
    j["dims"] = r.dims;
    j["points_per_dim"] = r.points_per_dim;
    j["p"] = r.p;
    j["repeat"] = r.repeat;
    j["seed"] = r.seed;
    j["params"] = r.params;
    j["expectation"] = r.expectation;
    j["mean_error"] = r.metrics.mean_error;
    j["statistical_distance"] = r.metrics.statistical_distance;
    j["max_amplification"] = r.metrics.max_amplification;
    j["max_amplified_index"] = r.metrics.max_amplified_index;
    j["max_amplified_rank"] = r.metrics.max_amplified_rank;
    j["evaluations"] = r.evaluations;
    j["iterations"] = r.iterations;
    j["converged"] = r.converged;
    j["best"] = r.best;
    if (!r.wavepacket_centres.empty()) {
        j["wavepacket_centres"] = r.wavepacket_centres;
        j["bound"] = r.bound;
    }
    if (r.hybrid) {
        const auto& h = *r.hybrid;
        j["hybrid"] = {{"success", h.success},
                       {"fev_qmoa", h.fev_qmoa},
                       {"fev_nelder_mead", h.fev_nelder_mead},
                       {"fev_assisted", h.fev_assisted},
                       {"sample_size", h.sample_size},
                       {"baseline_success", h.baseline_success},
                       {"baseline_fev", h.baseline_fev},
                       {"baseline_restarts", h.baseline_restarts},
                       {"speedup", h.speedup},
                       {"found", h.found}};
    }
    return j;
}

ExperimentRecord record_from_json(const json& j) {
    ExperimentRecord r;
    r.config_hash = j.at("config_hash").get<std::string>();
    r.kind = j.at("kind").get<std::string>();
    r.algorithm = j.at("algorithm").get<std::string>();
    r.mixer = j.at("mixer").get<std::string>();
    r.function = j.at("function").get<std::string>();
    r.dims = j.at("dims").get<int>();
    r.points_per_dim = j.at("points_per_dim").get<std::size_t>();
    r.p = j.at("p").get<int>();
    r.repeat = j.at("repeat").get<int>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.params = j.at("params").get<std::vector<double>>();
    r.expectation = j.at("expectation").get<double>();
    r.metrics.mean_error = j.at("mean_error").get<double>();
    r.metrics.statistical_distance = j.at("statistical_distance").get<double>();
    r.metrics.max_amplification = j.at("max_amplification").get<double>();
    r.metrics.max_amplified_index = j.at("max_amplified_index").get<std::size_t>();
    r.metrics.max_amplified_rank = j.at("max_amplified_rank").get<std::size_t>();
    r.evaluations = j.at("evaluations").get<long>();
    r.iterations = j.at("iterations").get<long>();
    r.converged = j.at("converged").get<bool>();
    r.best = j.at("best").get<bool>();
    if (j.contains("wavepacket_centres")) {
        r.wavepacket_centres = j.at("wavepacket_centres").get<std::vector<double>>();
        r.bound = j.at("bound").get<double>();
    }
    if (j.contains("hybrid")) {
        const json& h = j.at("hybrid");
        HybridFields f;
        f.success = h.at("success").get<bool>();
        f.fev_qmoa = h.at("fev_qmoa").get<long>();
        f.fev_nelder_mead = h.at("fev_nelder_mead").get<long>();
        f.fev_assisted = h.at("fev_assisted").get<long>();
        f.sample_size = h.at("sample_size").get<int>();
        f.baseline_success = h.at("baseline_success").get<bool>();
        f.baseline_fev = h.at("baseline_fev").get<long>();
        f.baseline_restarts = h.at("baseline_restarts").get<int>();
        f.speedup = h.at("speedup").get<double>();
        f.found = h.at("found").get<std::vector<double>>();
        r.hybrid = f;
    }
    return r;
}

std::vector<ExperimentRecord> read_records(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open records file " + path.string());
    std::vector<std::string> lines;
    for (std::string line; std::getline(in, line);) {
        if (!line.empty()) lines.push_back(line);
    }
    std::vector<ExperimentRecord> out;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        try {
            out.push_back(record_from_json(json::parse(lines[i])));
        } catch (const json::exception& e) {
            if (i + 1 == lines.size()) break;  // torn final line
            throw std::runtime_error(path.string() + ":" + std::to_string(i + 1) + ": " + e.what());
        }
    }
    return out;
}

RecordWriter::RecordWriter(std::filesystem::path path) : path_(std::move(path)) {}

void RecordWriter::append(const std::vector<ExperimentRecord>& records) {
    std::ofstream out(path_, std::ios::app);
    if (!out) throw std::runtime_error("cannot append to " + path_.string());
    for (const auto& r : records) out << to_json(r).dump() << '\n';
    out.flush();
    if (!out) throw std::runtime_error("write failed on " + path_.string());
}

void write_records(const std::filesystem::path& path, const std::vector<ExperimentRecord>& records) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    for (const auto& r : records) out << to_json(r).dump() << '\n';
    if (!out) throw std::runtime_error("write failed on " + path.string());
}

void write_records_csv(std::ostream& out, const std::vector<ExperimentRecord>& records) {
    out << "config_hash,kind,algorithm,mixer,function,dims,points_per_dim,p,repeat,seed,expectation,mean_error,"
           "statistical_distance,max_amplification,max_amplified_index,max_amplified_rank,evaluations,iterations,"
           "converged,best,speedup,fev_assisted,baseline_fev\n";
    out << std::setprecision(17);
    for (const auto& r : records) {
        out << r.config_hash << ',' << r.kind << ',' << r.algorithm << ',' << r.mixer << ',' << r.function << ','
            << r.dims << ',' << r.points_per_dim << ',' << r.p << ',' << r.repeat << ',' << r.seed << ','
            << r.expectation << ',' << r.metrics.mean_error << ',' << r.metrics.statistical_distance << ','
            << r.metrics.max_amplification << ',' << r.metrics.max_amplified_index << ','
            << r.metrics.max_amplified_rank << ',' << r.evaluations << ',' << r.iterations << ','
            << (r.converged ? 1 : 0) << ',' << (r.best ? 1 : 0) << ',';
        if (r.hybrid) {
            out << r.hybrid->speedup << ',' << r.hybrid->fev_assisted << ',' << r.hybrid->baseline_fev;
        } else {
            out << ",,";
        }
        out << '\n';
    }
}

}  // namespace qmoa::harness
