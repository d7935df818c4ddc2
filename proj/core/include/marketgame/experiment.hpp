#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "marketgame/engine.hpp"

namespace marketgame {

/// Parsed and validated batch-experiment description. Seeds are mandatory so no
/// run ever depends on the wall clock.
///
/// JSON layout:
///   {"experiment": "simulate|crossing|ratio_curve|f_of_a|diagnostics|example1",
///    "seed": 42, "game": {...}, ...kind-specific fields}
struct ExperimentConfig;

/// In-memory result of one experiment: the JSON summary plus named CSV series.
struct ExperimentResult {
    std::string kind;
    std::string summary_json;                      // pretty-printed results.json
    std::map<std::string, std::string> csv_files;  // file name -> contents
    std::map<std::string, std::string> plot_files; // figure name -> tidy CSV
};

/// Build a game from the config's "game" object:
///   {"investors": [{"wealth": 1.0, "strategy": {...}}, ...],
///    "payoffs": {"rho": {...}, "relative": {...}}}
GameConfig parse_game_config(const nlohmann::json& game);

/// Run the experiment described by a parsed JSON config.
ExperimentResult run_experiment(const nlohmann::json& config, unsigned workers);

/// Plot-ready CSV series for the result, keyed by figure name.
std::map<std::string, std::string> emit_plot_data(const ExperimentResult& result);

/// Write results.json and all CSV series atomically (temp file + rename).
void write_outputs(const ExperimentResult& result, const std::filesystem::path& out_dir);

/// Full CLI body: parse file, run, write. Returns the process exit code
/// (0 ok, 2 invalid config, 3 censoring exceeded, 4 numerical failure).
int run_config_file(const std::filesystem::path& config_path,
                    const std::filesystem::path& out_dir, unsigned workers,
                    std::optional<std::uint64_t> seed_override);

} // namespace marketgame
