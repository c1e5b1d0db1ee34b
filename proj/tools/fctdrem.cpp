// Scenario runner for the finite-convergence-time DREM estimators.
//
//   fctdrem list
//   fctdrem run --scenario fig1_ct_pe.toml --out results/
//   fctdrem run-all --out results/ [--step h] [--horizon T]
//
// Exit codes: 0 success, 1 configuration / validation error, 2 I/O error.

#include <cstdlib>
#include <future>
#include <iostream>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fctdrem/bundled.hpp"
#include "fctdrem/errors.hpp"
#include "fctdrem/runner.hpp"
#include "fctdrem/scenario.hpp"

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitIo = 2;

std::mutex g_print_mutex;

void print_summary(const fctdrem::Scenario &scn, const fctdrem::RunResult &result) {
    std::lock_guard lock(g_print_mutex);
    std::cout << scn.name << ": " << result.table.rows() << " rows\n";
    for (const auto &r : result.reports) {
        std::cout << "  " << r.estimator << "  rms=" << fctdrem::format_shortest(r.rms);
        for (const auto &iv : r.intervals) {
            std::cout << "  [" << fctdrem::format_shortest(iv.t0) << ","
                      << fctdrem::format_shortest(iv.t1) << ") hit="
                      << (iv.hit_time ? fctdrem::format_shortest(*iv.hit_time) : "-");
        }
        std::cout << "\n";
    }
}

template <typename Fn>
int guarded(Fn &&fn) {
    try {
        fn();
        return EXIT_SUCCESS;
    } catch (const fctdrem::ConfigError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const fctdrem::IoError &e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Finite-convergence-time DREM estimator simulations"};
    app.require_subcommand(1);

    std::optional<double> step;
    std::optional<double> horizon;
    std::string out_dir;
    std::string scenario_path;

    auto *list = app.add_subcommand("list", "Print the names of the bundled scenarios");

    auto *run = app.add_subcommand("run", "Run one scenario file");
    run->add_option("--scenario", scenario_path, "Scenario TOML file")->required();
    run->add_option("--out", out_dir, "Output directory")->required();
    run->add_option("--step", step, "Override the integration step / sampling time");
    run->add_option("--horizon", horizon, "Override the simulation horizon in seconds");

    auto *run_all = app.add_subcommand("run-all", "Run every bundled scenario");
    run_all->add_option("--out", out_dir, "Output directory")->required();
    run_all->add_option("--step", step, "Override the integration step / sampling time");
    run_all->add_option("--horizon", horizon, "Override the simulation horizon in seconds");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    if (list->parsed()) {
        for (const auto &s : fctdrem::bundled_scenarios()) {
            std::cout << s.name << "\n";
        }
        return EXIT_SUCCESS;
    }

    if (run->parsed()) {
        return guarded([&] {
            auto scn = fctdrem::parse_scenario(scenario_path);
            fctdrem::apply_overrides(scn, step, horizon);
            auto result = fctdrem::run_scenario(scn, out_dir);
            print_summary(scn, result);
        });
    }

    // run-all: parse everything first so a bad override fails before any output
    std::vector<fctdrem::Scenario> scenarios;
    const int parsed = guarded([&] {
        for (const auto &b : fctdrem::bundled_scenarios()) {
            auto scn = fctdrem::parse_scenario_text(b.toml, b.name);
            fctdrem::apply_overrides(scn, step, horizon);
            scenarios.push_back(std::move(scn));
        }
    });
    if (parsed != EXIT_SUCCESS) {
        return parsed;
    }

    std::vector<std::future<int>> jobs;
    for (const auto &scn : scenarios) {
        jobs.push_back(std::async(std::launch::async, [&scn, &out_dir] {
            return guarded([&] {
                auto result = fctdrem::run_scenario(scn, out_dir);
                print_summary(scn, result);
            });
        }));
    }
    int status = EXIT_SUCCESS;
    for (auto &job : jobs) {
        status = std::max(status, job.get());
    }
    return status;
}
