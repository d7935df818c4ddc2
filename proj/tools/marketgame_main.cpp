// Batch experiment runner for the asset market game.
//
//   marketgame run <config.json> [--out DIR] [--workers K] [--seed S]
//
// Reads a JSON experiment config, runs it, and writes results.json plus CSV
// series to the output directory. Exit codes: 0 success, 2 invalid config,
// 3 censoring bound exceeded, 4 numerical failure.

#include <cstdlib>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "marketgame/experiment.hpp"

int main(int argc, char** argv) {
    CLI::App app{"asset market game experiment runner"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = ".";
    unsigned workers = 0;
    std::optional<std::uint64_t> seed_override;

    CLI::App* run = app.add_subcommand("run", "run one experiment config");
    run->add_option("config", config_path, "experiment config (JSON)")->required();
    run->add_option("--out", out_dir, "output directory (default: current)");
    run->add_option("--workers", workers, "Monte Carlo worker threads");
    std::uint64_t seed_value = 0;
    CLI::Option* seed_opt = run->add_option("--seed", seed_value, "override the config seed");

    CLI11_PARSE(app, argc, argv);

    if (workers == 0) {
        if (const char* env = std::getenv("MARKETGAME_WORKERS")) {
            workers = static_cast<unsigned>(std::strtoul(env, nullptr, 10));
        }
    }
    if (workers == 0) workers = 1;
    if (seed_opt->count() > 0) seed_override = seed_value;

    return marketgame::run_config_file(config_path, out_dir, workers, seed_override);
}
