// zenosim command line: dissipative quantum Zeno simulations driven by a
// plain-text config. Subcommands: dynamics, zeno-scan, zeno-time, infoflow,
// verify. Exit codes: 0 success, 2 config error, 3 convergence failure,
// 4 verification failure.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "zenosim/config.hpp"
#include "zenosim/csv.hpp"
#include "zenosim/errors.hpp"
#include "zenosim/runner.hpp"
#include "zenosim/verify.hpp"

namespace {

constexpr int EXIT_OK = 0;
constexpr int EXIT_CONFIG = 2;
constexpr int EXIT_CONVERGENCE = 3;
constexpr int EXIT_VERIFY = 4;

struct GlobalOpts {
    std::string config_path;
    std::string out_dir;
    int threads = 0;
    unsigned seed = 0; // reserved; no stochastic components yet
};

int effective_threads(int requested) {
    if (requested > 0) {
        return requested;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

using Runner = zenosim::runner::RunArtifacts (*)(
    const zenosim::config::ExperimentConfig&, const std::string&, int);

int run_with_config(const GlobalOpts& opts, Runner fn) {
    zenosim::config::ExperimentConfig cfg;
    try {
        cfg = zenosim::config::load_config_file(opts.config_path);
    } catch (const zenosim::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return EXIT_CONFIG;
    }
    try {
        const auto artifacts =
            fn(cfg, opts.out_dir, effective_threads(opts.threads));
        std::cout << artifacts.summary << "\n";
        for (const auto& f : artifacts.files) {
            std::cout << "wrote " << f << "\n";
        }
        return EXIT_OK;
    } catch (const zenosim::NonConvergenceError& e) {
        std::cerr << "convergence failure: " << e.what() << "\n";
        return EXIT_CONVERGENCE;
    } catch (const zenosim::NoZenoRegimeError& e) {
        std::cerr << "no Zeno regime: " << e.what() << "\n";
        return EXIT_CONVERGENCE;
    } catch (const zenosim::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

int run_verify(const GlobalOpts& opts, int criterion) {
    using namespace zenosim;
    try {
        std::vector<verify::CriterionResult> results;
        if (!opts.config_path.empty()) {
            config::ExperimentConfig cfg;
            try {
                cfg = config::load_config_file(opts.config_path);
            } catch (const ConfigError& e) {
                std::cerr << "config error: " << e.what() << "\n";
                return EXIT_CONFIG;
            }
            results = verify::run_config_checks(
                cfg, effective_threads(opts.threads));
        } else if (criterion > 0) {
            results.push_back(verify::run_criterion(
                criterion, effective_threads(opts.threads)));
        } else {
            results = verify::run_all(effective_threads(opts.threads));
        }

        bool all = true;
        for (const auto& r : results) {
            std::printf("[%s] criterion %2d: %s - %s\n",
                        r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(),
                        r.detail.c_str());
            all = all && r.passed;
        }
        const std::string dir = opts.out_dir.empty() ? "out" : opts.out_dir;
        std::filesystem::create_directories(dir);
        const std::string report = dir + "/verify_report.json";
        zenosim::csv::write_file(report, verify::report_json(results));
        std::cout << "wrote " << report << "\n";
        return all ? EXIT_OK : EXIT_VERIFY;
    } catch (const zenosim::NonConvergenceError& e) {
        std::cerr << "convergence failure: " << e.what() << "\n";
        return EXIT_CONVERGENCE;
    } catch (const zenosim::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"zenosim: quantum Zeno / anti-Zeno rates for dissipative "
                 "spin-boson systems (hierarchical equations of motion)"};
    app.require_subcommand(1);
    app.fallthrough(); // global options may follow the subcommand name

    GlobalOpts opts;
    app.add_option("--config", opts.config_path, "experiment config file")
        ->envname("ZENOSIM_CONFIG");
    app.add_option("--out", opts.out_dir,
                   "output directory (overrides [output] directory)");
    app.add_option("--threads", opts.threads,
                   "worker threads (default: hardware concurrency)");
    app.add_option("--seed", opts.seed,
                   "reserved for future stochastic components");

    auto* dynamics =
        app.add_subcommand("dynamics", "reduced-state time series");
    auto* scan = app.add_subcommand("zeno-scan",
                                    "survival and decay-rate scan over tau");
    auto* ztime =
        app.add_subcommand("zeno-time", "short-time Zeno-time extraction");
    auto* flow = app.add_subcommand(
        "infoflow", "trace-distance information-flow decomposition");
    auto* verify_cmd = app.add_subcommand(
        "verify", "run the acceptance criteria (all, one, or a config)");
    int criterion = 0;
    verify_cmd->add_option("--criterion", criterion,
                           "run a single criterion (1..12)");

    CLI11_PARSE(app, argc, argv);

    auto need_config = [&](const char* sub) {
        if (opts.config_path.empty()) {
            std::cerr << "zenosim " << sub << " requires --config\n";
            return false;
        }
        return true;
    };

    if (dynamics->parsed()) {
        if (!need_config("dynamics")) {
            return EXIT_CONFIG;
        }
        return run_with_config(opts, zenosim::runner::run_dynamics);
    }
    if (scan->parsed()) {
        if (!need_config("zeno-scan")) {
            return EXIT_CONFIG;
        }
        return run_with_config(opts, zenosim::runner::run_zeno_scan);
    }
    if (ztime->parsed()) {
        if (!need_config("zeno-time")) {
            return EXIT_CONFIG;
        }
        return run_with_config(opts, zenosim::runner::run_zeno_time);
    }
    if (flow->parsed()) {
        if (!need_config("infoflow")) {
            return EXIT_CONFIG;
        }
        return run_with_config(opts, zenosim::runner::run_infoflow);
    }
    if (verify_cmd->parsed()) {
        return run_verify(opts, criterion);
    }
    return EXIT_OK;
}
