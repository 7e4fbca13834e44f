#include "qmoa/harness/config.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>

#include "qmoa/test_functions.hpp"

namespace qmoa::harness {
namespace {

using nlohmann::json;

template <class T>
T get_or(const json& j, const char* key, T fallback) {
    if (!j.contains(key) || j.at(key).is_null()) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config key '") + key + "': " + e.what());
    }
}

template <class T>
std::vector<T> scalar_or_list(const json& j, const char* key, std::vector<T> fallback) {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    try {
        if (v.is_array()) return v.get<std::vector<T>>();
        return {v.get<T>()};
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config key '") + key + "': " + e.what());
    }
}

std::vector<int> parse_depths(const json& j) {
    if (!j.contains("p_range")) throw ConfigError("config key 'p_range' is required");
    const json& v = j.at("p_range");
    try {
        if (v.is_object()) {
            const int lo = v.at("from").get<int>();
            const int hi = v.at("to").get<int>();
            std::vector<int> out;
            for (int p = lo; p <= hi; ++p) out.push_back(p);
            return out;
        }
        if (v.is_array()) return v.get<std::vector<int>>();
        return {v.get<int>()};
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config key 'p_range': ") + e.what());
    }
}

const char* endpoint_name(Endpoints e) { return e == Endpoints::inclusive ? "inclusive" : "exclusive"; }

}  // namespace

std::string to_string(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::depth_sweep: return "depth_sweep";
        case ExperimentKind::mixer_comparison: return "mixer_comparison";
        case ExperimentKind::degree_sweep: return "degree_sweep";
        case ExperimentKind::scaling_study: return "scaling_study";
        case ExperimentKind::hybrid_study: return "hybrid_study";
    }
    return "unknown";
}

ExperimentKind parse_kind(const std::string& s) {
    for (auto k : {ExperimentKind::depth_sweep, ExperimentKind::mixer_comparison, ExperimentKind::degree_sweep,
                   ExperimentKind::scaling_study, ExperimentKind::hybrid_study}) {
        if (s == to_string(k)) return k;
    }
    throw ConfigError("unknown experiment_kind '" + s + "'");
}

CirculantGraph GraphChoice::build(std::size_t N) const {
    if (kind == "complete") return CirculantGraph::complete(N);
    if (kind == "cycle") return CirculantGraph::cycle(N);
    if (kind == "banded") return CirculantGraph::banded(N, half_width);
    throw ConfigError("unknown graph kind '" + kind + "'");
}

std::string GraphChoice::label(std::size_t N) const { return build(N).describe(); }

json ExperimentConfig::semantic_json() const {
    json j;
    j["experiment_kind"] = to_string(kind);
    std::vector<std::string> algs;
    for (auto a : algorithms) algs.push_back(to_string(a));
    j["algorithms"] = algs;
    j["functions"] = functions;
    j["dims"] = dims;
    j["points_per_dim"] = points_per_dim;
    j["p_range"] = depths;
    j["repeats"] = repeats;
    j["base_seed"] = base_seed;
    json o;
    o["max_iterations"] = optimiser.max_iterations ? json(*optimiser.max_iterations) : json(nullptr);
    o["max_evaluations"] = optimiser.max_evaluations ? json(*optimiser.max_evaluations) : json(nullptr);
    o["simplex_tolerance"] = optimiser.simplex_tolerance;
    o["value_tolerance"] = optimiser.value_tolerance;
    o["adaptive"] = optimiser.adaptive;
    j["optimiser"] = o;
    j["graph"] = {{"kind", graph.kind}, {"half_width", graph.half_width}};
    j["degrees"] = degrees;
    j["shared_walk_time"] = shared_walk_time;
    j["grid_endpoints"] = endpoint_name(endpoints);
    j["qubit_cap"] = qubit_cap;
    if (kind == ExperimentKind::hybrid_study) {
        j["hybrid"] = {{"sample_size", hybrid.sample_size},
                       {"epsilon", hybrid.epsilon},
                       {"max_outer_restarts", hybrid.max_outer_restarts},
                       {"max_baseline_evaluations", hybrid.max_baseline_evaluations}};
    }
    return j;
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string ExperimentConfig::hash() const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(semantic_json().dump())));
    return buf;
}

ExperimentConfig parse_config(const json& j) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    static const std::set<std::string> known{"experiment_kind", "algorithms", "algorithm", "functions", "function",
                                             "dims", "points_per_dim", "p_range", "repeats", "base_seed",
                                             "optimiser", "graph", "degrees", "shared_walk_time", "grid_endpoints",
                                             "qubit_cap", "hybrid", "output_dir", "workers", "description"};
    for (const auto& [key, _] : j.items()) {
        if (!known.count(key)) throw ConfigError("unknown config key '" + key + "'");
    }
    ExperimentConfig c;
    c.kind = parse_kind(get_or<std::string>(j, "experiment_kind", "depth_sweep"));
    std::vector<std::string> algs =
        scalar_or_list<std::string>(j, j.contains("algorithms") ? "algorithms" : "algorithm", {"qmoa"});
    c.algorithms.clear();
    for (const auto& a : algs) {
        try {
            c.algorithms.push_back(parse_algorithm(a));
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
    }
    c.functions = scalar_or_list<std::string>(j, j.contains("functions") ? "functions" : "function", {});
    c.dims = scalar_or_list<int>(j, "dims", {2});
    c.points_per_dim = get_or<std::size_t>(j, "points_per_dim", 16);
    if (c.kind == ExperimentKind::hybrid_study && !j.contains("p_range")) {
        c.depths = {2};
    } else {
        c.depths = parse_depths(j);
    }
    c.repeats = get_or<int>(j, "repeats", 10);
    c.base_seed = get_or<std::uint64_t>(j, "base_seed", 0);
    if (j.contains("optimiser")) {
        const json& o = j.at("optimiser");
        if (!o.is_object()) throw ConfigError("config key 'optimiser' must be an object");
        if (o.contains("max_iterations")) {
            c.optimiser.max_iterations =
                o.at("max_iterations").is_null() ? std::nullopt : std::optional<long>(get_or<long>(o, "max_iterations", 0));
        }
        if (o.contains("max_evaluations")) {
            c.optimiser.max_evaluations = o.at("max_evaluations").is_null()
                                              ? std::nullopt
                                              : std::optional<long>(get_or<long>(o, "max_evaluations", 0));
        }
        c.optimiser.simplex_tolerance = get_or<double>(o, "simplex_tolerance", 1e-4);
        c.optimiser.value_tolerance = get_or<double>(o, "value_tolerance", 1e-4);
        c.optimiser.adaptive = get_or<bool>(o, "adaptive", true);
    }
    if (j.contains("graph")) {
        const json& g = j.at("graph");
        if (g.is_string()) {
            c.graph.kind = g.get<std::string>();
        } else {
            c.graph.kind = get_or<std::string>(g, "kind", "complete");
            c.graph.half_width = get_or<std::size_t>(g, "half_width", 1);
        }
    }
    c.degrees = scalar_or_list<std::size_t>(j, "degrees", {});
    c.shared_walk_time = get_or<bool>(j, "shared_walk_time", false);
    const auto ends = get_or<std::string>(j, "grid_endpoints", "inclusive");
    if (ends == "inclusive") {
        c.endpoints = Endpoints::inclusive;
    } else if (ends == "exclusive") {
        c.endpoints = Endpoints::exclusive;
    } else {
        throw ConfigError("grid_endpoints must be 'inclusive' or 'exclusive'");
    }
    c.qubit_cap = get_or<int>(j, "qubit_cap", kDefaultQubitCap);
    if (j.contains("hybrid")) {
        const json& h = j.at("hybrid");
        c.hybrid.sample_size = get_or<int>(h, "sample_size", 30);
        c.hybrid.epsilon = get_or<double>(h, "epsilon", 1e-4);
        c.hybrid.max_outer_restarts = get_or<int>(h, "max_outer_restarts", 50);
        c.hybrid.max_baseline_evaluations = get_or<long>(h, "max_baseline_evaluations", 100000000);
    }
    c.output_dir = get_or<std::string>(j, "output_dir", "runs");
    c.workers = get_or<int>(j, "workers", 0);
    validate(c);
    return c;
}

void validate(const ExperimentConfig& c) {
    if (c.depths.empty()) throw ConfigError("p_range must not be empty");
    for (std::size_t i = 0; i < c.depths.size(); ++i) {
        if (c.depths[i] < 1) throw ConfigError("p_range entries must be at least 1");
        if (i > 0 && c.depths[i] <= c.depths[i - 1]) throw ConfigError("p_range must be strictly ascending");
    }
    if (c.kind != ExperimentKind::hybrid_study) {
        for (std::size_t i = 0; i < c.depths.size(); ++i) {
            // warm starts chain p-1 -> p
            if (c.depths[i] != c.depths[0] + static_cast<int>(i)) throw ConfigError("p_range must be contiguous");
        }
    }
    if (c.repeats < 1) throw ConfigError("repeats must be at least 1");
    if (c.functions.empty()) throw ConfigError("at least one function is required");
    if (c.algorithms.empty()) throw ConfigError("at least one algorithm is required");
    if (c.dims.empty()) throw ConfigError("dims must not be empty");
    if (!is_power_of_two(c.points_per_dim) || c.points_per_dim < 2) {
        throw ConfigError("points_per_dim must be a power of two >= 2");
    }
    for (const auto& name : c.functions) {
        const TestFunction* f = nullptr;
        try {
            f = &find_test_function(name);
        } catch (const std::exception& e) {
            throw ConfigError(e.what());
        }
        for (int d : c.dims) {
            if (!f->supports(d)) throw ConfigError(name + " does not support D=" + std::to_string(d));
        }
    }
    for (int d : c.dims) {
        if (d < 1) throw ConfigError("dims entries must be at least 1");
        if (d * log2_exact(c.points_per_dim) > c.qubit_cap) {
            throw ConfigError("D=" + std::to_string(d) + ", N=" + std::to_string(c.points_per_dim) + " needs " +
                              std::to_string(d * log2_exact(c.points_per_dim)) + " qubits, above the cap of " +
                              std::to_string(c.qubit_cap));
        }
    }
    if (!(c.optimiser.simplex_tolerance > 0.0) || !(c.optimiser.value_tolerance > 0.0)) {
        throw ConfigError("optimiser tolerances must be positive");
    }
    try {
        (void)c.graph.build(c.points_per_dim);
        for (auto s : c.degrees) (void)CirculantGraph::banded(c.points_per_dim, s);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (c.kind == ExperimentKind::degree_sweep && c.degrees.empty()) throw ConfigError("degree_sweep needs 'degrees'");
    if (c.kind == ExperimentKind::hybrid_study) {
        if (c.depths.size() != 1) throw ConfigError("hybrid_study takes a single depth in p_range");
        if (c.hybrid.sample_size < 1) throw ConfigError("hybrid.sample_size must be at least 1");
        if (!(c.hybrid.epsilon > 0.0)) throw ConfigError("hybrid.epsilon must be positive");
    }
}

json load_config_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    try {
        return json::parse(in, nullptr, true, true);
    } catch (const json::parse_error& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

void apply_override(json& j, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("override must look like key=value: " + assignment);
    const std::string path = assignment.substr(0, eq);
    const std::string text = assignment.substr(eq + 1);
    json value;
    try {
        value = json::parse(text);
    } catch (const json::parse_error&) {
        value = text;
    }
    json* node = &j;
    std::size_t start = 0;
    while (true) {
        const auto dot = path.find('.', start);
        const std::string key = path.substr(start, dot - start);
        if (key.empty()) throw ConfigError("bad override key: " + path);
        if (dot == std::string::npos) {
            (*node)[key] = value;
            break;
        }
        if (!(*node)[key].is_object()) (*node)[key] = json::object();
        node = &(*node)[key];
        start = dot + 1;
    }
}

}  // namespace qmoa::harness
