// qmoa: run experiments, summarise records, emit plot data.
//
//   qmoa run configs/fig2_styblinski_tang.json --set repeats=3
//   qmoa summarise runs/fig2/records.jsonl --group-by algorithm,p -o summary.csv
//   qmoa plot-data summary.csv --kind mean_error -o plots/
//   qmoa catalogue
//
// Exit status: 0 ok, 2 bad config or arguments, 3 failure while running.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qmoa/ansatz.hpp"
#include "qmoa/harness/config.hpp"
#include "qmoa/harness/plot_data.hpp"
#include "qmoa/harness/runner.hpp"
#include "qmoa/harness/summary.hpp"
#include "qmoa/test_functions.hpp"

namespace {

constexpr int kConfigError = 2;
constexpr int kRuntimeError = 3;

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

int env_workers() {
    const char* v = std::getenv("QMOA_WORKERS");
    if (!v || !*v) return 0;
    char* end = nullptr;
    const long n = std::strtol(v, &end, 10);
    if (*end != '\0' || n < 1) throw qmoa::harness::ConfigError("QMOA_WORKERS must be a positive integer");
    return static_cast<int>(n);
}

void print_catalogue() {
    std::cout << "functions:\n";
    for (const auto& f : qmoa::catalogue()) {
        std::cout << "  " << f.name << (f.any_dimension ? "  (any D)" : "  (D=2)") << "  x in [" << f.domain_x.lower
                  << ", " << f.domain_x.upper << "]";
        if (!f.any_dimension) std::cout << ", y in [" << f.domain_y.lower << ", " << f.domain_y.upper << "]";
        std::cout << "\n";
    }
    std::cout << "algorithms:\n";
    for (auto a : {qmoa::Algorithm::qmoa, qmoa::Algorithm::qaoa_complete, qmoa::Algorithm::qaoa_hypercube,
                   qmoa::Algorithm::qowe}) {
        std::cout << "  " << qmoa::to_string(a) << "\n";
    }
    std::cout << "graphs (qmoa):\n  complete\n  cycle\n  banded  (graph.half_width = s, 1 <= s <= N/2)\n";
    std::cout << "experiment kinds:\n  depth_sweep\n  mixer_comparison\n  degree_sweep\n  scaling_study\n  hybrid_study\n";
    std::cout << "plot kinds:\n";
    for (const auto& k : qmoa::harness::plot_kinds()) std::cout << "  " << k << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Statevector simulation of variational quantum optimisers on discretised continuous functions"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "run or resume an experiment");
    std::string config_path;
    std::vector<std::string> overrides;
    std::string output_dir;
    int max_steps = -1;
    bool quiet = false;
    run->add_option("config", config_path, "experiment config (JSON)")->required();
    run->add_option("--set", overrides, "override a config key, e.g. --set repeats=3 --set optimiser.adaptive=false");
    run->add_option("-o,--output", output_dir, "output directory (overrides output_dir)");
    run->add_option("--max-steps", max_steps, "stop after this many newly computed depths");
    run->add_flag("-q,--quiet", quiet, "no progress output");

    auto* summ = app.add_subcommand("summarise", "group records and compute mean / population stddev");
    std::string records_path, group_by, summary_out;
    summ->add_option("records", records_path, "records.jsonl")->required();
    summ->add_option("--group-by", group_by, "comma separated keys (default algorithm,mixer,function,dims,points_per_dim,p)");
    summ->add_option("-o,--output", summary_out, "write CSV here instead of stdout");

    auto* plot = app.add_subcommand("plot-data", "write CSV series for plotting");
    std::string summary_in, kind, plot_dir = ".";
    plot->add_option("summary", summary_in, "summary CSV from 'summarise'")->required();
    plot->add_option("--kind", kind, "mean_error | amplification | bars | scaling | speedup")->required();
    plot->add_option("-o,--output", plot_dir, "output directory");

    app.add_subcommand("catalogue", "list functions, algorithms and graphs");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kConfigError;
    }

    try {
        if (app.got_subcommand("catalogue")) {
            print_catalogue();
            return 0;
        }
        if (*run) {
            qmoa::harness::ExperimentConfig config;
            try {
                auto j = qmoa::harness::load_config_json(config_path);
                for (const auto& o : overrides) qmoa::harness::apply_override(j, o);
                if (!output_dir.empty()) j["output_dir"] = output_dir;
                config = qmoa::harness::parse_config(j);
                if (const int w = env_workers()) config.workers = w;
            } catch (const qmoa::harness::ConfigError& e) {
                std::cerr << "config error: " << e.what() << "\n";
                return kConfigError;
            }
            qmoa::harness::RunOptions options;
            options.log = quiet ? nullptr : &std::cerr;
            options.max_new_steps = max_steps;
            try {
                const auto records = qmoa::harness::run_experiment(config, options);
                std::cerr << records.size() << " records in " << (config.output_dir / "records.jsonl").string() << "\n";
            } catch (const std::exception& e) {
                // the config already validated, so anything here is a runtime failure
                std::cerr << "error: " << e.what() << "\n";
                return kRuntimeError;
            }
            return 0;
        }
        if (*summ) {
            const auto keys = group_by.empty() ? qmoa::harness::default_group_by() : split_commas(group_by);
            const auto records = qmoa::harness::read_records(records_path);
            const auto table = qmoa::harness::summarise(records, keys);
            if (summary_out.empty()) {
                qmoa::harness::write_csv(std::cout, table);
            } else {
                std::ofstream out(summary_out);
                if (!out) throw std::runtime_error("cannot write " + summary_out);
                qmoa::harness::write_csv(out, table);
            }
            return 0;
        }
        if (*plot) {
            const auto table = qmoa::harness::read_csv(summary_in);
            for (const auto& p : qmoa::harness::emit_plot_data(table, kind, plot_dir)) std::cerr << "wrote " << p.string() << "\n";
            return 0;
        }
    } catch (const qmoa::harness::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kRuntimeError;
    }
    return 0;
}
