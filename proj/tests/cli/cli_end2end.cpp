// Drives the installed CLI binary end to end: writes configs, runs the tool via
// the shell, checks exit codes and emitted files. Takes the binary path as argv[1].

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

int failures = 0;

void check(bool ok, const std::string& what) {
    if (!ok) {
        ++failures;
        std::fprintf(stderr, "FAILED: %s\n", what.c_str());
    }
}

int run_command(const std::string& command) {
    const int status = std::system(command.c_str());
    return status < 0 ? status : WEXITSTATUS(status);
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream out;
    out << in.rdbuf();
    return out.str();
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: cli_end2end <marketgame binary>\n");
        return 2;
    }
    const std::string binary = argv[1];
    const fs::path dir = fs::temp_directory_path() / "marketgame_cli_e2e";
    fs::remove_all(dir);
    fs::create_directories(dir);

    {
        std::ofstream cfg(dir / "example1.json");
        cfg << R"({"experiment": "example1", "seed": 7, "relative": [0.6, 0.4],
                  "rho": 1.2, "opponent": [0.5, 0.5], "initial_share": 0.5,
                  "levels": {"min": 100.0, "max": 1000000.0, "factor": 10.0}})";
    }
    const std::string out1 = (dir / "out1").string();
    check(run_command(binary + " run " + (dir / "example1.json").string() + " --out " + out1 +
                      " > /dev/null") == 0,
          "example1 run exits 0");
    check(fs::exists(fs::path(out1) / "results.json"), "results.json written");
    check(fs::exists(fs::path(out1) / "example1.csv"), "example1.csv written");
    const std::string csv = slurp(fs::path(out1) / "example1.csv");
    check(csv.rfind("level,tau1,tau2,ratio", 0) == 0, "example1.csv header");

    // same config, same seed: byte-identical output regardless of worker count
    const std::string out2 = (dir / "out2").string();
    check(run_command(binary + " run " + (dir / "example1.json").string() + " --out " + out2 +
                      " --workers 8 > /dev/null") == 0,
          "8-worker run exits 0");
    check(slurp(fs::path(out1) / "results.json") == slurp(fs::path(out2) / "results.json"),
          "results.json identical across worker counts");

    // seed override changes the seed field in the summary
    const std::string out3 = (dir / "out3").string();
    check(run_command(binary + " run " + (dir / "example1.json").string() + " --out " + out3 +
                      " --seed 99 > /dev/null") == 0,
          "seed override run exits 0");
    check(slurp(fs::path(out3) / "results.json").find("\"seed\": 99") != std::string::npos,
          "seed override lands in the summary");

    // worker count may also come from the environment
    const std::string out4 = (dir / "out4").string();
    check(run_command("MARKETGAME_WORKERS=4 " + binary + " run " +
                      (dir / "example1.json").string() + " --out " + out4 + " > /dev/null") == 0,
          "env-configured workers run exits 0");
    check(slurp(fs::path(out1) / "results.json") == slurp(fs::path(out4) / "results.json"),
          "env-configured workers give identical results");

    {
        std::ofstream cfg(dir / "broken.json");
        cfg << "{ this is not json";
    }
    check(run_command(binary + " run " + (dir / "broken.json").string() + " --out " +
                      (dir / "out_broken").string() + " 2> /dev/null") == 2,
          "malformed config exits 2");
    check(!fs::exists(dir / "out_broken" / "results.json"), "no partial outputs on exit 2");

    {
        std::ofstream cfg(dir / "censored.json");
        cfg << R"({"experiment": "crossing", "seed": 3, "levels": [10000.0],
                  "paths": 200, "horizon": 3,
                  "game": {"investors": [
                             {"wealth": 1.0, "strategy": {"kind": "lambda_star"}},
                             {"wealth": 1.0, "strategy": {"kind": "lambda_star"}}],
                           "payoffs": {
                             "rho": {"kind": "constant", "value": 1.2},
                             "relative": {"kind": "discrete",
                                          "points": [[0.9, 0.1], [0.1, 0.9]],
                                          "probs": [0.5, 0.5]}}}})";
    }
    check(run_command(binary + " run " + (dir / "censored.json").string() + " --out " +
                      (dir / "out_censored").string() + " 2> /dev/null") == 3,
          "hopeless horizon exits 3 (censoring exceeded)");

    check(run_command(binary + " run definitely_missing.json 2> /dev/null") == 2,
          "missing config exits 2");

    if (failures == 0) fs::remove_all(dir);
    std::printf("cli_end2end: %d failures\n", failures);
    return failures == 0 ? 0 : 1;
}
