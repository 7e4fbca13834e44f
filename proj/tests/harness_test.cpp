#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qmoa/engine.hpp"
#include "qmoa/harness/config.hpp"
#include "qmoa/harness/plot_data.hpp"
#include "qmoa/harness/records.hpp"
#include "qmoa/harness/runner.hpp"
#include "qmoa/harness/summary.hpp"
#include "qmoa/metrics.hpp"

using namespace qmoa;
using namespace qmoa::harness;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const auto p = fs::temp_directory_path() / ("qmoa_harness_test_" + std::to_string(::getpid())) / name;
    fs::remove_all(p);
    fs::create_directories(p.parent_path());
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json small_sweep() {
    return json{{"experiment_kind", "depth_sweep"}, {"algorithm", "qmoa"}, {"function", "sphere"},
                {"dims", 2},          {"points_per_dim", 8},    {"p_range", {{"from", 1}, {"to", 3}}},
                {"repeats", 2},       {"base_seed", 5},         {"optimiser", {{"max_evaluations", 150}}}};
}

ExperimentRecord record_with(double mean_error, double expectation, int repeat) {
    ExperimentRecord r;
    r.algorithm = "qmoa";
    r.mixer = "complete";
    r.function = "sphere";
    r.dims = 2;
    r.points_per_dim = 8;
    r.p = 1;
    r.repeat = repeat;
    r.expectation = expectation;
    r.metrics.mean_error = mean_error;
    r.metrics.max_amplification = 2.0;
    return r;
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(QMOA_CLI) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Config, DefaultsAndForms) {
    const auto c = parse_config(small_sweep());
    EXPECT_EQ(c.kind, ExperimentKind::depth_sweep);
    EXPECT_EQ(c.algorithms, std::vector<Algorithm>{Algorithm::qmoa});
    EXPECT_EQ(c.functions, std::vector<std::string>{"sphere"});
    EXPECT_EQ(c.depths, (std::vector<int>{1, 2, 3}));
    EXPECT_EQ(c.optimiser.max_evaluations, 150);
    EXPECT_EQ(c.optimiser.max_iterations, 1000000);
    EXPECT_TRUE(c.optimiser.adaptive);
    EXPECT_EQ(c.endpoints, Endpoints::inclusive);

    auto j = small_sweep();
    j["p_range"] = 4;
    EXPECT_EQ(parse_config(j).depths, std::vector<int>{4});
    j["p_range"] = {2, 3};
    EXPECT_EQ(parse_config(j).depths, (std::vector<int>{2, 3}));
}

TEST(Config, Rejections) {
    auto bad = [](auto mutate) {
        auto j = small_sweep();
        mutate(j);
        EXPECT_THROW(parse_config(j), ConfigError) << j.dump();
    };
    bad([](json& j) { j["p_range"] = json::array(); });
    bad([](json& j) { j["p_range"] = {3, 2}; });
    bad([](json& j) { j["p_range"] = {1, 3}; });
    bad([](json& j) { j["function"] = "nope"; });
    bad([](json& j) { j["function"] = "beale", j["dims"] = 3; });
    bad([](json& j) { j["algorithm"] = "grover"; });
    bad([](json& j) { j["points_per_dim"] = 12; });
    bad([](json& j) { j["dims"] = 4, j["points_per_dim"] = 256; });
    bad([](json& j) { j["repeats"] = 0; });
    bad([](json& j) { j["colour"] = "blue"; });
    bad([](json& j) { j["graph"] = {{"kind", "banded"}, {"half_width", 5}}; });
    bad([](json& j) { j["experiment_kind"] = "degree_sweep"; });
    bad([](json& j) { j["experiment_kind"] = "hybrid_study", j["p_range"] = {1, 2}; });
    bad([](json& j) { j["optimiser"] = {{"simplex_tolerance", 0.0}}; });
}

TEST(Config, QubitCapIsConfigurable) {
    auto j = small_sweep();
    j["dims"] = 3;
    j["points_per_dim"] = 1024;
    EXPECT_NO_THROW(parse_config(j));
    j["qubit_cap"] = 20;
    EXPECT_THROW(parse_config(j), ConfigError);
}

TEST(Config, HashTracksSemanticFields) {
    const auto base = parse_config(small_sweep()).hash();
    EXPECT_EQ(base.size(), 16u);
    auto j = small_sweep();
    j["output_dir"] = "/somewhere/else";
    j["workers"] = 3;
    j["description"] = "words";
    EXPECT_EQ(parse_config(j).hash(), base);
    // the same config spelled differently
    auto k = small_sweep();
    k.erase("algorithm");
    k["algorithms"] = {"qmoa"};
    k["p_range"] = {1, 2, 3};
    k["optimiser"]["adaptive"] = true;
    EXPECT_EQ(parse_config(k).hash(), base);

    for (auto change : std::vector<std::pair<std::string, json>>{{"repeats", 3},
                                                                  {"base_seed", 6},
                                                                  {"dims", 1},
                                                                  {"points_per_dim", 16},
                                                                  {"function", "ackley"},
                                                                  {"algorithm", "qowe"},
                                                                  {"grid_endpoints", "exclusive"},
                                                                  {"shared_walk_time", true},
                                                                  {"p_range", 2}}) {
        auto m = small_sweep();
        m[change.first] = change.second;
        EXPECT_NE(parse_config(m).hash(), base) << change.first;
    }
    auto o = small_sweep();
    o["optimiser"]["value_tolerance"] = 1e-5;
    EXPECT_NE(parse_config(o).hash(), base);
}

TEST(Config, Overrides) {
    auto j = small_sweep();
    apply_override(j, "repeats=7");
    apply_override(j, "optimiser.adaptive=false");
    apply_override(j, "function=ackley");
    apply_override(j, "hybrid.sample_size=10");
    EXPECT_EQ(j["repeats"], 7);
    EXPECT_EQ(j["optimiser"]["adaptive"], false);
    EXPECT_EQ(j["function"], "ackley");
    EXPECT_EQ(j["hybrid"]["sample_size"], 10);
    EXPECT_THROW(apply_override(j, "novalue"), ConfigError);
}

TEST(Config, LoadAllowsComments) {
    const auto p = scratch("commented.json");
    std::ofstream(p) << "{\n  // a sweep\n  \"function\": \"sphere\", \"p_range\": [1]\n}\n";
    EXPECT_EQ(parse_config(load_config_json(p)).functions, std::vector<std::string>{"sphere"});
    EXPECT_THROW(load_config_json(p.parent_path() / "missing.json"), ConfigError);
}

TEST(Records, JsonRoundTrip) {
    auto r = record_with(0.25, -1.5, 3);
    r.params = {0.1, -2.0, 1e-300};
    r.seed = 0xffffffffffffffffull;
    r.wavepacket_centres = {1.0, -2.0};
    r.hybrid = HybridFields{};
    r.hybrid->found = {1.0, 2.0};
    r.hybrid->speedup = 3.5;
    const auto back = record_from_json(to_json(r));
    EXPECT_EQ(to_json(back).dump(), to_json(r).dump());
    EXPECT_EQ(back.seed, r.seed);
    EXPECT_EQ(back.params, r.params);
    ASSERT_TRUE(back.hybrid);
    EXPECT_EQ(back.hybrid->found, r.hybrid->found);
}

TEST(Records, TornLastLineIsDropped) {
    const auto p = scratch("torn.jsonl");
    write_records(p, {record_with(0.1, 1, 0), record_with(0.2, 2, 1)});
    std::ofstream(p, std::ios::app) << "{\"algorithm\": \"qm";
    EXPECT_EQ(read_records(p).size(), 2u);
    // damage in the middle is not an interrupted write
    const auto q = scratch("corrupt.jsonl");
    std::ofstream(q) << to_json(record_with(0.1, 1, 0)).dump() << "\nnot json\n"
                     << to_json(record_with(0.1, 1, 1)).dump() << "\n";
    EXPECT_THROW(read_records(q), std::runtime_error);
}

TEST(Runner, DepthSweepRecords) {
    auto j = small_sweep();
    j["output_dir"] = scratch("sweep").string();
    const auto c = parse_config(j);
    const auto records = run_experiment(c);
    ASSERT_EQ(records.size(), 6u);
    for (int p = 1; p <= 3; ++p) {
        int best = 0;
        double low = INFINITY;
        for (const auto& r : records) {
            if (r.p != p) continue;
            best += r.best;
            low = std::min(low, r.expectation);
            EXPECT_EQ(r.seed, repeat_seed(5, p, r.repeat));
            EXPECT_EQ(r.config_hash, c.hash());
            EXPECT_EQ(r.params.size(), static_cast<std::size_t>(3 * p));
            EXPECT_EQ(r.mixer, "complete");
        }
        EXPECT_EQ(best, 1);
        for (const auto& r : records)
            if (r.p == p && r.best) EXPECT_EQ(r.expectation, low);
    }
    for (const char* f : {"records.jsonl", "records.csv", "timings.jsonl", "config.json"}) {
        EXPECT_TRUE(fs::exists(c.output_dir / f)) << f;
    }
    EXPECT_EQ(read_records(c.output_dir / "records.jsonl").size(), 6u);
}

TEST(Runner, ResumeIsByteIdentical) {
    auto j = small_sweep();
    j["output_dir"] = scratch("full").string();
    const auto full = parse_config(j);
    run_experiment(full);

    j["output_dir"] = scratch("pieces").string();
    const auto pieces = parse_config(j);
    RunOptions one;
    one.max_new_steps = 1;
    EXPECT_EQ(run_experiment(pieces, one).size(), 2u);
    EXPECT_EQ(run_experiment(pieces, one).size(), 4u);
    // a write cut short mid-line
    std::ofstream(pieces.output_dir / "records.jsonl", std::ios::app) << "{\"config_hash\":\"";
    EXPECT_EQ(run_experiment(pieces).size(), 6u);
    // and resuming a finished run changes nothing
    run_experiment(pieces);

    EXPECT_EQ(slurp(full.output_dir / "records.jsonl"), slurp(pieces.output_dir / "records.jsonl"));
    EXPECT_EQ(slurp(full.output_dir / "records.csv"), slurp(pieces.output_dir / "records.csv"));
}

TEST(Runner, ResumeRefusesAnotherConfig) {
    auto j = small_sweep();
    j["output_dir"] = scratch("mismatch").string();
    RunOptions one;
    one.max_new_steps = 1;
    run_experiment(parse_config(j), one);
    j["repeats"] = 3;
    EXPECT_THROW(run_experiment(parse_config(j)), std::runtime_error);
}

TEST(Runner, MixerComparisonPlansEverySeries) {
    auto j = small_sweep();
    j["experiment_kind"] = "mixer_comparison";
    j["algorithms"] = {"qmoa", "qaoa_complete", "qaoa_hypercube", "qowe"};
    j.erase("algorithm");
    j["functions"] = {"sphere", "ackley"};
    j.erase("function");
    const auto series = plan_series(parse_config(j));
    EXPECT_EQ(series.size(), 8u);

    auto d = small_sweep();
    d["experiment_kind"] = "degree_sweep";
    d["degrees"] = {1, 2, 4};
    const auto banded = plan_series(parse_config(d));
    ASSERT_EQ(banded.size(), 3u);
    EXPECT_EQ(banded[0].mixer, "cycle");
    EXPECT_EQ(banded[1].mixer, "banded(2)");
    EXPECT_EQ(banded[2].mixer, "complete");
}

TEST(Runner, HybridStudyAccounting) {
    json j{{"experiment_kind", "hybrid_study"}, {"function", "sphere"}, {"dims", 2}, {"points_per_dim", 8},
           {"p_range", 1},     {"repeats", 2},       {"base_seed", 1}, {"output_dir", scratch("hybrid").string()}};
    const auto records = run_experiment(parse_config(j));
    ASSERT_EQ(records.size(), 2u);
    for (const auto& r : records) {
        ASSERT_TRUE(r.hybrid);
        const auto& h = *r.hybrid;
        EXPECT_EQ(h.fev_assisted, static_cast<long>(h.sample_size) * (r.p + 1) * h.fev_qmoa + h.fev_nelder_mead);
        if (h.success && h.baseline_success) EXPECT_DOUBLE_EQ(h.speedup, double(h.baseline_fev) / h.fev_assisted);
    }
    const auto t = summarise(records, default_group_by());
    EXPECT_TRUE(t.has("speedup_mean"));
    EXPECT_TRUE(t.has("speedup_of_means"));
    EXPECT_TRUE(t.has("success_rate"));
}

TEST(Summary, MeanAndPopulationStd) {
    const auto t = summarise({record_with(0.1, 1.0, 0), record_with(0.3, 0.5, 1)}, default_group_by());
    ASSERT_EQ(t.rows.size(), 1u);
    EXPECT_NEAR(t.number(0, "mean_error_mean"), 0.2, 1e-15);
    EXPECT_NEAR(t.number(0, "mean_error_std"), 0.1, 1e-15);
    EXPECT_EQ(t.number(0, "count"), 2.0);
    EXPECT_EQ(t.number(0, "best_repeat"), 1.0);
    EXPECT_NEAR(t.number(0, "best_mean_error"), 0.3, 1e-15);

    std::vector<ExperimentRecord> same(10, record_with(0.4, 1.0, 0));
    const auto u = summarise(same, default_group_by());
    EXPECT_EQ(u.number(0, "mean_error_std"), 0.0);
    EXPECT_THROW(summarise({}, default_group_by()), std::invalid_argument);
    EXPECT_THROW(population_moments({}), std::invalid_argument);
}

TEST(Summary, GroupsByRequestedKeys) {
    auto a = record_with(0.1, 1.0, 0), b = record_with(0.3, 1.0, 1);
    b.p = 2;
    EXPECT_EQ(summarise({a, b}, default_group_by()).rows.size(), 2u);
    EXPECT_EQ(summarise({a, b}, {"algorithm"}).rows.size(), 1u);
    EXPECT_THROW(summarise({a}, {"colour"}), std::invalid_argument);
}

TEST(Summary, CsvRoundTrip) {
    Table t;
    t.columns = {"a", "b,c"};
    t.rows = {{"1", "say \"hi\""}, {"2", ""}};
    const auto p = scratch("table.csv");
    {
        std::ofstream out(p);
        write_csv(out, t);
    }
    const auto back = read_csv(p);
    EXPECT_EQ(back.columns, t.columns);
    EXPECT_EQ(back.rows, t.rows);
}

namespace {

Table amp_summary(int D, std::size_t N, int pmax) {
    Table s;
    s.columns = {"algorithm", "mixer", "function", "dims", "points_per_dim", "p", "max_amplification_mean",
                 "max_amplification_std", "best_max_amplification"};
    for (int p = 1; p <= pmax; ++p) {
        const double amp = 1.5 * std::pow(p, 1.2 * D);
        s.rows.push_back({"qmoa", "complete", "rastrigin", std::to_string(D), std::to_string(N), std::to_string(p),
                          std::to_string(amp), "0.1", std::to_string(amp)});
    }
    return s;
}

}  // namespace

TEST(PlotData, AmplificationIncludesGroverLine) {
    const auto t = plot_table(amp_summary(3, 32, 8), "amplification");
    double last = 0.0;
    int rows = 0;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        if (t.at(i, "series") != "rdgs:K=32768") continue;
        ++rows;
        last = t.number(i, "y");
    }
    EXPECT_EQ(rows, 9);
    EXPECT_NEAR(last, 288.0, 0.5);
}

TEST(PlotData, ScalingHasPointsAndFittedLine) {
    auto s = amp_summary(2, 16, 6);
    const auto more = amp_summary(3, 16, 6);
    s.rows.insert(s.rows.end(), more.rows.begin(), more.rows.end());
    const auto fits = scaling_fits(s);
    ASSERT_EQ(fits.size(), 1u);
    EXPECT_NEAR(fits[0].fit.alpha, 1.2, 1e-5);
    const auto t = plot_table(s, "scaling");
    int points = 0, fitted = 0;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const auto& series = t.at(i, "series");
        if (series.find(":fit:") == std::string::npos) {
            ++points;
            continue;
        }
        ++fitted;
        const int D = series.back() - '0';
        const double p = t.number(i, "x");
        EXPECT_NEAR(t.number(i, "y"), fits[0].fit.C * std::pow(p, fits[0].fit.alpha * D), 1e-6 * t.number(i, "y"));
    }
    EXPECT_EQ(points, 12);
    EXPECT_EQ(fitted, 100);
    const auto dir = scratch("scaling_plot");
    EXPECT_EQ(emit_plot_data(s, "scaling", dir).size(), 2u);
    EXPECT_TRUE(fs::exists(dir / "scaling_fit.csv"));
}

TEST(PlotData, EmptySummaryWritesNothing) {
    Table empty;
    empty.columns = {"algorithm"};
    const auto dir = scratch("empty_plot");
    EXPECT_THROW(emit_plot_data(empty, "mean_error", dir), std::invalid_argument);
    EXPECT_FALSE(fs::exists(dir));
    EXPECT_THROW(plot_table(amp_summary(2, 4, 2), "histogram"), std::invalid_argument);
}

TEST(Cli, ExitCodes) {
    const auto dir = scratch("cli");
    fs::create_directories(dir);
    EXPECT_EQ(run_cli("catalogue"), 0);
    EXPECT_EQ(run_cli("frobnicate"), 2);

    auto good = small_sweep();
    good["p_range"] = 1;
    good["repeats"] = 1;
    std::ofstream(dir / "good.json") << good.dump();
    EXPECT_EQ(run_cli("run " + (dir / "good.json").string() + " -q -o " + (dir / "out").string()), 0);
    EXPECT_EQ(run_cli("summarise " + (dir / "out" / "records.jsonl").string() + " -o " + (dir / "s.csv").string()), 0);
    EXPECT_EQ(run_cli("plot-data " + (dir / "s.csv").string() + " --kind mean_error -o " + (dir / "plots").string()), 0);
    EXPECT_TRUE(fs::exists(dir / "plots" / "mean_error.csv"));
    EXPECT_EQ(run_cli("plot-data " + (dir / "s.csv").string() + " --kind histogram"), 2);

    auto bad = good;
    bad["p_range"] = json::array();
    std::ofstream(dir / "bad.json") << bad.dump();
    EXPECT_EQ(run_cli("run " + (dir / "bad.json").string()), 2);
    EXPECT_EQ(run_cli("run " + (dir / "good.json").string() + " --set repeats=0"), 2);

    // an output path that is a regular file cannot become a run directory
    std::ofstream(dir / "occupied") << "x";
    EXPECT_EQ(run_cli("run " + (dir / "good.json").string() + " -q -o " + (dir / "occupied").string()), 3);
}
