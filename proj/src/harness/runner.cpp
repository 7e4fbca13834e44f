#include "qmoa/harness/runner.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <stdexcept>

#include <omp.h>

#include "qmoa/engine.hpp"
#include "qmoa/hybrid.hpp"
#include "qmoa/rng.hpp"
#include "qmoa/test_functions.hpp"

namespace qmoa::harness {
namespace {

using Clock = std::chrono::steady_clock;

std::string mixer_label(Algorithm a, const std::vector<CirculantGraph>& graphs) {
    switch (a) {
        case Algorithm::qmoa: return graphs.front().describe();
        case Algorithm::qaoa_complete: return "complete_K";
        case Algorithm::qaoa_hypercube: return "hypercube";
        case Algorithm::qowe: return "momentum";
    }
    return "unknown";
}

struct Context {
    const ExperimentConfig& config;
    const RunOptions& options;
    std::string hash;
    RecordWriter writer;
    std::ofstream timings;
    std::vector<ExperimentRecord> all;
    int steps = 0;

    bool budget_left() const { return options.max_new_steps < 0 || steps < options.max_new_steps; }
    void log(const std::string& line) const {
        if (options.log) *options.log << line << std::endl;
    }
    void time(const std::string& series, int p, double seconds) {
        timings << nlohmann::json{{"series", series}, {"p", p}, {"seconds", seconds}}.dump() << '\n';
        timings.flush();
    }
};

int worker_count(const ExperimentConfig& c) { return c.workers > 0 ? c.workers : omp_get_max_threads(); }

void run_depth_series(Context& ctx, const Series& s) {
    const ExperimentConfig& c = ctx.config;
    const TestFunction& fn = find_test_function(s.function);
    const auto grid = make_grid(fn.lower_bounds(s.dims), fn.upper_bounds(s.dims), c.points_per_dim, c.endpoints,
                                c.qubit_cap);
    const auto table = build_objective(grid, [&](std::span<const double> x) { return fn(x); });

    AnsatzSpec spec;
    spec.algorithm = s.algorithm;
    spec.graphs = s.graphs;
    spec.shared_walk_time = c.shared_walk_time;
    const std::size_t per_layer = spec.params_per_layer(s.dims);

    EngineOptions eopt;
    eopt.repeats = c.repeats;
    eopt.base_seed = c.base_seed;
    eopt.optimiser = c.optimiser;
    eopt.workers = worker_count(c);

    std::string key;
    // depths already on disk, with their best record
    std::map<int, std::optional<ExperimentRecord>> done;
    for (const auto& r : ctx.all) {
        if (r.algorithm == to_string(s.algorithm) && r.mixer == s.mixer && r.function == s.function &&
            r.dims == s.dims) {
            auto& slot = done[r.p];
            if (r.best) slot = r;
        }
    }

    std::optional<WarmStart> warm;
    for (int p : c.depths) {
        spec.depth = p;
        if (auto it = done.find(p); it != done.end()) {
            if (!it->second) throw std::runtime_error("records for p=" + std::to_string(p) + " have no best repeat");
            const ExperimentRecord& r = *it->second;
            WarmStart w{ParameterVector::unflatten(r.params, per_layer), std::nullopt, r.bound};
            if (!r.wavepacket_centres.empty()) {
                w.wavepacket = WavepacketSpec{r.wavepacket_centres,
                                              std::vector<double>(r.wavepacket_centres.size(), 1.0 / std::sqrt(2.0))};
            }
            warm = std::move(w);
            continue;
        }
        if (!ctx.budget_left()) return;
        if (p != c.depths.front() && !warm) throw std::runtime_error("records are missing the warm start for p=" + std::to_string(p));
        // the first depth of a sweep starting above 1 has no predecessor
        const std::optional<WarmStart> start = p == c.depths.front() ? std::nullopt : warm;

        const auto t0 = Clock::now();
        AnsatzSpec run_spec = spec;
        if (start && p - 1 != start->params.depth()) throw std::runtime_error("warm start depth mismatch");
        DepthResult result = optimise(run_spec, table, grid, start, eopt);

        std::vector<ExperimentRecord> recs;
        for (const auto& rep : result.repeats) {
            AnsatzSpec st = run_spec;
            st.wavepacket = rep.wavepacket;
            AnsatzSimulator sim(st, table, grid);
            ExperimentRecord r;
            r.config_hash = ctx.hash;
            r.kind = to_string(c.kind);
            r.algorithm = to_string(s.algorithm);
            r.mixer = s.mixer;
            r.function = s.function;
            r.dims = s.dims;
            r.points_per_dim = c.points_per_dim;
            r.p = p;
            r.repeat = rep.repeat;
            r.seed = rep.seed;
            r.params = rep.params;
            r.expectation = rep.expectation;
            r.metrics = compute_metrics(sim.prepare(rep.params), grid, table);
            r.evaluations = rep.evaluations;
            r.iterations = rep.iterations;
            r.converged = rep.converged;
            r.best = static_cast<std::size_t>(rep.repeat) == result.best;
            if (rep.wavepacket) {
                r.wavepacket_centres = rep.wavepacket->centres;
                r.bound = rep.bound;
            }
            recs.push_back(std::move(r));
        }
        const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
        ctx.writer.append(recs);
        key = recs.front().series_key();
        ctx.time(key, p, secs);
        ++ctx.steps;
        const auto& b = recs[result.best];
        char line[256];
        std::snprintf(line, sizeof line, "%s p=%d best <Q>=%.6g mean_error=%.4g amp=%.4g (%.1f s)", key.c_str(), p,
                      b.expectation, b.metrics.mean_error, b.metrics.max_amplification, secs);
        ctx.log(line);
        long renorm = 0;
        for (const auto& rep : result.repeats) renorm += rep.renormalisations;
        if (renorm > 0) ctx.log(key + " p=" + std::to_string(p) + ": " + std::to_string(renorm) + " states renormalised (norm drift > 1e-12)");
        warm = warm_start_from(result, per_layer);
        for (auto& r : recs) ctx.all.push_back(std::move(r));
    }
}

void run_hybrid_series(Context& ctx, const Series& s) {
    const ExperimentConfig& c = ctx.config;
    const TestFunction& fn = find_test_function(s.function);
    const int p = c.depths.front();
    int have = 0;
    for (const auto& r : ctx.all) {
        if (r.function == s.function && r.dims == s.dims && r.p == p && r.hybrid) ++have;
    }
    HybridOptions hopt;
    hopt.depth = p;
    hopt.points_per_dim = c.points_per_dim;
    hopt.endpoints = c.endpoints;
    hopt.sample_size = c.hybrid.sample_size;
    hopt.epsilon = c.hybrid.epsilon;
    hopt.max_outer_restarts = c.hybrid.max_outer_restarts;
    const int threads = worker_count(c);

    while (have < c.repeats && ctx.budget_left()) {
        const int batch = std::min(threads, c.repeats - have);
        std::vector<ExperimentRecord> recs(static_cast<std::size_t>(batch));
        const auto t0 = Clock::now();
        std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
        for (int i = 0; i < batch; ++i) {
            try {
                const int rep = have + i;
                const std::uint64_t seed = derive_seed(c.base_seed, static_cast<std::uint64_t>(p),
                                                       static_cast<std::uint64_t>(rep));
                const auto h = hybrid_optimise(fn, s.dims, hopt, seed);
                const auto base = classical_baseline(fn, s.dims, hopt.epsilon, baseline_seed(seed),
                                                     c.hybrid.max_baseline_evaluations);
                ExperimentRecord& r = recs[static_cast<std::size_t>(i)];
                r.config_hash = ctx.hash;
                r.kind = to_string(c.kind);
                r.algorithm = to_string(Algorithm::qmoa);
                r.mixer = s.mixer;
                r.function = s.function;
                r.dims = s.dims;
                r.points_per_dim = c.points_per_dim;
                r.p = p;
                r.repeat = rep;
                r.seed = seed;
                r.expectation = h.value;
                r.evaluations = h.accounting.fev_assisted;
                r.iterations = h.outer_runs;
                r.converged = h.success;
                HybridFields f;
                f.success = h.success;
                f.fev_qmoa = h.accounting.fev_qmoa;
                f.fev_nelder_mead = h.accounting.fev_nelder_mead;
                f.fev_assisted = h.accounting.fev_assisted;
                f.sample_size = h.accounting.sample_size;
                f.baseline_success = base.success;
                f.baseline_fev = base.evaluations;
                f.baseline_restarts = base.restarts;
                f.speedup = speedup(base.evaluations, h.accounting);
                f.found = h.x;
                r.hybrid = f;
            } catch (...) {
#pragma omp critical(qmoa_hybrid_error)
                if (!error) error = std::current_exception();
            }
        }
        if (error) std::rethrow_exception(error);
        const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
        ctx.writer.append(recs);
        const std::string key = recs.front().series_key();
        ctx.time(key, p, secs);
        ++ctx.steps;
        for (const auto& r : recs) {
            char line[256];
            std::snprintf(line, sizeof line, "%s hybrid repeat %d: success=%d assisted=%ld baseline=%ld speedup=%.4g",
                          key.c_str(), r.repeat, r.hybrid->success ? 1 : 0, r.hybrid->fev_assisted,
                          r.hybrid->baseline_fev, r.hybrid->speedup);
            ctx.log(line);
        }
        have += batch;
        for (auto& r : recs) ctx.all.push_back(std::move(r));
    }
}

}  // namespace

std::uint64_t baseline_seed(std::uint64_t hybrid_seed) { return mix64(hybrid_seed ^ 0x9e3779b97f4a7c15ULL); }

std::vector<Series> plan_series(const ExperimentConfig& c) {
    std::vector<Series> out;
    for (const auto& f : c.functions) {
        for (int d : c.dims) {
            if (c.kind == ExperimentKind::degree_sweep) {
                for (auto s : c.degrees) {
                    Series x{Algorithm::qmoa, std::vector<CirculantGraph>(d, CirculantGraph::banded(c.points_per_dim, s)),
                             "", f, d};
                    x.mixer = mixer_label(x.algorithm, x.graphs);
                    out.push_back(std::move(x));
                }
                continue;
            }
            if (c.kind == ExperimentKind::hybrid_study) {
                out.push_back({Algorithm::qmoa, std::vector<CirculantGraph>(d, CirculantGraph::complete(c.points_per_dim)),
                               "complete", f, d});
                continue;
            }
            for (auto a : c.algorithms) {
                Series x{a, {}, "", f, d};
                if (a == Algorithm::qmoa) x.graphs.assign(d, c.graph.build(c.points_per_dim));
                x.mixer = mixer_label(a, x.graphs);
                out.push_back(std::move(x));
            }
        }
    }
    return out;
}

std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& config, const RunOptions& options) {
    validate(config);
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(config.output_dir, ec);
    if (ec) throw std::runtime_error("cannot create " + config.output_dir.string() + ": " + ec.message());
    const fs::path records_path = config.output_dir / "records.jsonl";
    const std::string hash = config.hash();

    std::vector<ExperimentRecord> existing;
    if (fs::exists(records_path)) {
        existing = read_records(records_path);
        for (const auto& r : existing) {
            if (r.config_hash != hash) {
                throw std::runtime_error(records_path.string() + " holds records of config " + r.config_hash +
                                         ", not " + hash + "; use a fresh output_dir");
            }
        }
        // drop a torn line or a depth that was only partly written
        std::map<std::pair<std::string, int>, int> counts;
        for (const auto& r : existing) ++counts[{r.series_key(), r.p}];
        std::vector<ExperimentRecord> kept;
        for (auto& r : existing) {
            if (r.hybrid || counts[{r.series_key(), r.p}] == config.repeats) kept.push_back(std::move(r));
        }
        existing = std::move(kept);
        write_records(records_path, existing);
    }
    {
        std::ofstream cfg(config.output_dir / "config.json");
        nlohmann::json j = config.semantic_json();
        j["config_hash"] = hash;
        cfg << j.dump(2) << '\n';
        if (!cfg) throw std::runtime_error("cannot write " + (config.output_dir / "config.json").string());
    }

    Context ctx{config, options, hash, RecordWriter(records_path),
                std::ofstream(config.output_dir / "timings.jsonl", std::ios::app), std::move(existing), 0};
    if (!ctx.timings) throw std::runtime_error("cannot write " + (config.output_dir / "timings.jsonl").string());
    for (const auto& s : plan_series(config)) {
        if (!ctx.budget_left()) break;
        if (config.kind == ExperimentKind::hybrid_study) {
            run_hybrid_series(ctx, s);
        } else {
            run_depth_series(ctx, s);
        }
    }

    std::ofstream csv(config.output_dir / "records.csv", std::ios::trunc);
    write_records_csv(csv, ctx.all);
    if (!csv) throw std::runtime_error("cannot write " + (config.output_dir / "records.csv").string());
    return ctx.all;
}

}  // namespace qmoa::harness
