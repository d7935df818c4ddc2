#include "marketgame/experiment.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "marketgame/analysis.hpp"
#include "marketgame/errors.hpp"
#include "marketgame/numeric.hpp"
#include "marketgame/stopping.hpp"

namespace marketgame {

using nlohmann::json;

namespace {

double require_number(const json& obj, const std::string& key) {
    if (!obj.contains(key) || !obj[key].is_number()) {
        throw ConfigError("missing or non-numeric field '" + key + "'");
    }
    return obj[key].get<double>();
}

std::vector<double> require_vector(const json& obj, const std::string& key) {
    if (!obj.contains(key) || !obj[key].is_array()) {
        throw ConfigError("missing or non-array field '" + key + "'");
    }
    std::vector<double> out;
    for (const auto& v : obj[key]) {
        if (!v.is_number()) throw ConfigError("field '" + key + "' must contain numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

std::string require_string(const json& obj, const std::string& key) {
    if (!obj.contains(key) || !obj[key].is_string()) {
        throw ConfigError("missing or non-string field '" + key + "'");
    }
    return obj[key].get<std::string>();
}

GrowthSpec parse_growth(const json& spec) {
    const std::string kind = require_string(spec, "kind");
    if (kind == "lognormal") {
        return GrowthSpec::lognormal(require_number(spec, "mu"), require_number(spec, "sigma"));
    }
    if (kind == "discrete") {
        return GrowthSpec::discrete(require_vector(spec, "values"), require_vector(spec, "probs"));
    }
    if (kind == "constant") {
        return GrowthSpec::constant(require_number(spec, "value"));
    }
    throw ConfigError("unknown growth kind '" + kind + "'");
}

RelativePayoffSpec parse_relative(const json& spec) {
    const std::string kind = require_string(spec, "kind");
    if (kind == "dirichlet") {
        return RelativePayoffSpec::dirichlet(require_vector(spec, "alpha"));
    }
    if (kind == "discrete") {
        if (!spec.contains("points") || !spec["points"].is_array()) {
            throw ConfigError("discrete relative payoffs need a 'points' array");
        }
        std::vector<SimplexVector> points;
        for (const auto& p : spec["points"]) {
            std::vector<double> weights;
            for (const auto& v : p) weights.push_back(v.get<double>());
            points.emplace_back(std::move(weights));
        }
        return RelativePayoffSpec::discrete(std::move(points), require_vector(spec, "probs"));
    }
    if (kind == "constant") {
        return RelativePayoffSpec::constant(SimplexVector(require_vector(spec, "weights")));
    }
    throw ConfigError("unknown relative payoff kind '" + kind + "'");
}

StrategySpec parse_strategy(const json& spec, const SimplexVector& star) {
    const std::string kind = require_string(spec, "kind");
    if (kind == "lambda_star") return StrategySpec::lambda_star();
    if (kind == "constant") {
        return StrategySpec::constant(SimplexVector(require_vector(spec, "weights")));
    }
    if (kind == "separated") {
        return StrategySpec::separated(SimplexVector(require_vector(spec, "base")), star,
                                       require_number(spec, "a"), require_number(spec, "floor"));
    }
    throw ConfigError("unknown strategy kind '" + kind + "'");
}

std::vector<double> parse_levels(const json& config) {
    if (!config.contains("levels")) throw ConfigError("missing 'levels'");
    const json& levels = config["levels"];
    if (levels.is_array()) {
        std::vector<double> out;
        for (const auto& v : levels) out.push_back(v.get<double>());
        if (out.empty()) throw ConfigError("'levels' must not be empty");
        return out;
    }
    if (levels.is_object()) {
        const double factor = levels.contains("factor") ? levels["factor"].get<double>() : 10.0;
        return level_grid(require_number(levels, "min"), require_number(levels, "max"), factor);
    }
    throw ConfigError("'levels' must be an array or {min, max, factor}");
}

std::uint64_t require_seed(const json& config) {
    if (!config.contains("seed") || !config["seed"].is_number_integer() ||
        (config["seed"].is_number_integer() && !config["seed"].is_number_unsigned() &&
         config["seed"].get<long long>() < 0)) {
        throw ConfigError("'seed' is mandatory and must be a nonnegative integer "
                          "(no wall-clock seeding)");
    }
    return config["seed"].get<std::uint64_t>();
}

long parse_horizon(const json& config) {
    if (!config.contains("horizon")) return 0; // auto
    const json& h = config["horizon"];
    if (h.is_string() && h.get<std::string>() == "auto") return 0;
    if (h.is_number_integer() && h.get<long>() > 0) return h.get<long>();
    throw ConfigError("'horizon' must be a positive integer or \"auto\"");
}

json round_json(double v) { return round_sig12(v); }

json estimate_to_json(const CrossingEstimate& est) {
    return json{{"level", round_json(est.level)},
                {"mean_tau", round_json(est.mean_tau)},
                {"se", round_json(est.std_error)},
                {"paths", est.paths_used},
                {"censored", est.censored},
                {"horizon", est.horizon},
                {"valid", est.valid}};
}

class CsvBuilder {
public:
    explicit CsvBuilder(std::string header) { out_ << header << "\n"; }
    template <typename... Cols>
    void row(Cols&&... cols) {
        bool first = true;
        ((out_ << (first ? "" : ",") << format(cols), first = false), ...);
        out_ << "\n";
    }
    std::string str() const { return out_.str(); }

private:
    static std::string format(double v) { return format_sig12(round_sig12(v)); }
    static std::string format(long v) { return std::to_string(v); }
    static std::string format(std::size_t v) { return std::to_string(v); }
    static std::string format(int v) { return std::to_string(v); }
    static std::string format(const std::string& v) { return v; }
    static std::string format(const char* v) { return v; }
    std::ostringstream out_;
};

ExperimentResult run_simulate(const json& config, unsigned workers) {
    (void)workers;
    const GameConfig game = parse_game_config(config.at("game"));
    const long horizon = config.contains("horizon") ? config["horizon"].get<long>() : 100;
    if (horizon < 1) throw ConfigError("'horizon' must be positive");
    const std::uint64_t seed = require_seed(config);

    const WealthPath path = simulate_path(game, horizon, RngStream(seed, 0));
    ExperimentResult result;
    result.kind = "simulate";
    result.csv_files["path.csv"] = path_to_csv(path);

    const MarketState& last = path.states.back();
    json summary;
    summary["experiment"] = "simulate";
    summary["seed"] = seed;
    summary["horizon"] = horizon;
    summary["final"] = {{"t", last.time},
                        {"ln_total_wealth", round_json(last.log_total_wealth)}};
    json shares = json::array();
    for (std::size_t m = 0; m < last.shares.size(); ++m) {
        shares.push_back(round_json(last.shares.share(m)));
    }
    summary["final"]["shares"] = shares;
    result.summary_json = summary.dump(2) + "\n";
    return result;
}

ExperimentResult run_crossing(const json& config, unsigned workers) {
    const GameConfig game = parse_game_config(config.at("game"));
    const std::vector<double> levels = parse_levels(config);
    CrossingOptions options;
    options.seed = require_seed(config);
    options.paths = config.contains("paths") ? config["paths"].get<std::size_t>() : 10000;
    options.horizon = parse_horizon(config);
    options.workers = workers;
    if (config.contains("censor_bound")) options.censor_bound = config["censor_bound"].get<double>();

    std::vector<std::size_t> investors;
    if (config.contains("investors")) {
        for (const auto& v : config["investors"]) {
            const std::size_t idx = v.get<std::size_t>();
            if (idx < 1 || idx > game.num_investors()) throw ConfigError("investor out of range");
            investors.push_back(idx - 1);
        }
    } else {
        for (std::size_t m = 0; m < game.num_investors(); ++m) investors.push_back(m);
    }

    CsvBuilder csv("level,investor,mean_tau,se,censored,paths");
    json rows = json::array();
    for (const double level : levels) {
        for (const std::size_t m : investors) {
            const CrossingEstimate est = estimate_expected_tau(game, m, level, options);
            csv.row(level, m + 1, est.mean_tau, est.std_error, est.censored, est.paths_used);
            json row = estimate_to_json(est);
            row["investor"] = m + 1;
            rows.push_back(std::move(row));
        }
    }

    ExperimentResult result;
    result.kind = "crossing";
    result.csv_files["crossing.csv"] = csv.str();
    json summary;
    summary["experiment"] = "crossing";
    summary["seed"] = options.seed;
    summary["paths"] = options.paths;
    summary["estimates"] = std::move(rows);
    result.summary_json = summary.dump(2) + "\n";
    return result;
}

ExperimentResult run_ratio_curve(const json& config, unsigned workers) {
    const GameConfig game = parse_game_config(config.at("game"));
    const std::vector<double> levels = parse_levels(config);
    CrossingOptions options;
    options.seed = require_seed(config);
    options.paths = config.contains("paths") ? config["paths"].get<std::size_t>() : 10000;
    options.horizon = parse_horizon(config);
    options.workers = workers;
    if (config.contains("censor_bound")) options.censor_bound = config["censor_bound"].get<double>();
    std::size_t opponent = 1;
    if (config.contains("opponent")) {
        const std::size_t idx = config["opponent"].get<std::size_t>();
        if (idx < 2 || idx > game.num_investors()) {
            throw ConfigError("'opponent' must be an investor index >= 2");
        }
        opponent = idx - 1;
    }

    const RatioCurve curve = ratio_curve(game, levels, opponent, options);

    CsvBuilder ratio_csv("level,ratio,ci_lo,ci_hi,theorem2_rhs");
    CsvBuilder crossing_csv("level,investor,mean_tau,se,censored,paths");
    json points = json::array();
    for (const RatioPoint& p : curve.points) {
        const double rhs = curve.theorem2_rhs ? *curve.theorem2_rhs : 1.0;
        ratio_csv.row(p.level, p.ratio, p.ratio - p.ci, p.ratio + p.ci, rhs);
        crossing_csv.row(p.level, 1, p.investor1.mean_tau, p.investor1.std_error,
                         p.investor1.censored, p.investor1.paths_used);
        crossing_csv.row(p.level, opponent + 1, p.opponent.mean_tau, p.opponent.std_error,
                         p.opponent.censored, p.opponent.paths_used);
        points.push_back(json{{"level", round_json(p.level)},
                              {"ratio", round_json(p.ratio)},
                              {"ci", round_json(p.ci)},
                              {"pairs", p.pairs},
                              {"investor1", estimate_to_json(p.investor1)},
                              {"opponent", estimate_to_json(p.opponent)},
                              {"lower_tau", round_json(p.lower_bound_tau)},
                              {"upper_tau", round_json(p.upper_bound_tau)}});
    }

    ExperimentResult result;
    result.kind = "ratio_curve";
    result.csv_files["ratio.csv"] = ratio_csv.str();
    result.csv_files["crossing.csv"] = crossing_csv.str();
    json summary;
    summary["experiment"] = "ratio_curve";
    summary["seed"] = options.seed;
    summary["paths"] = options.paths;
    summary["horizon"] = curve.horizon;
    summary["opponent"] = opponent + 1;
    if (curve.separation) summary["separation"] = round_json(*curve.separation);
    if (curve.f_of_a) summary["f_a"] = round_json(*curve.f_of_a);
    if (curve.theorem2_rhs) summary["theorem2_rhs"] = round_json(*curve.theorem2_rhs);
    summary["points"] = std::move(points);
    result.summary_json = summary.dump(2) + "\n";
    return result;
}

ExperimentResult run_f_of_a(const json& config, unsigned workers) {
    (void)workers;
    if (!config.contains("payoffs")) throw ConfigError("f_of_a needs a 'payoffs' object");
    const json& payoffs = config["payoffs"];
    const RelativePayoffSpec relative = parse_relative(payoffs.at("relative"));
    std::optional<GrowthSpec> growth;
    if (payoffs.contains("rho")) growth = parse_growth(payoffs["rho"]);

    ComputeFOptions options;
    options.seed = require_seed(config);
    if (config.contains("saa_samples")) options.saa_samples = config["saa_samples"].get<std::size_t>();
    if (config.contains("multistarts")) options.multistarts = config["multistarts"].get<int>();

    std::vector<double> radii;
    if (config.contains("a_grid")) {
        radii = require_vector(config, "a_grid");
    } else {
        radii = {require_number(config, "a")};
    }

    CsvBuilder csv("a,f_a,feasible,theorem2_rhs,saa_se");
    json entries = json::array();
    for (const double a : radii) {
        const FofA f = compute_f(relative, a, options);
        json entry;
        entry["a"] = round_json(a);
        entry["f_a"] = f.feasible ? round_sig12(f.value) : -1.0;
        entry["feasible"] = f.feasible;
        entry["saa_se"] = round_json(f.saa_std_error);
        entry["multistarts"] = f.multistarts;
        entry["saa_samples"] = f.saa_samples;
        double rhs = 1.0;
        if (f.feasible && f.argmax) {
            json argmax = json::array();
            for (double w : f.argmax->as_vector()) argmax.push_back(round_json(w));
            entry["argmax"] = argmax;
        }
        if (growth && f.feasible) {
            rhs = theorem2_rhs(f, growth->theta());
            entry["theorem2_rhs"] = round_json(rhs);
        }
        csv.row(a, f.feasible ? f.value : -1.0, f.feasible ? 1 : 0, rhs, f.saa_std_error);
        entries.push_back(std::move(entry));
    }

    ExperimentResult result;
    result.kind = "f_of_a";
    result.csv_files["f_of_a.csv"] = csv.str();
    json summary;
    summary["experiment"] = "f_of_a";
    summary["seed"] = options.seed;
    // single-radius runs keep the flat schema
    if (entries.size() == 1) {
        for (auto& [key, value] : entries[0].items()) summary[key] = value;
    }
    summary["entries"] = std::move(entries);
    if (growth) {
        summary["theta"] = round_json(growth->theta());
        summary["sigma"] = round_json(growth->sigma());
        summary["epsilon"] = round_json(relative.epsilon());
        summary["delta"] = round_json(relative.epsilon() * relative.epsilon() / 256.0);
    }
    result.summary_json = summary.dump(2) + "\n";
    return result;
}

ExperimentResult run_diagnostics(const json& config, unsigned workers) {
    const GameConfig game = parse_game_config(config.at("game"));
    const std::uint64_t seed = require_seed(config);

    const std::size_t n_states =
        config.contains("states") ? config["states"].get<std::size_t>() : 500;
    const std::size_t inner =
        config.contains("inner_samples") ? config["inner_samples"].get<std::size_t>() : 10000;

    (void)workers; // the diagnostics pipeline is sequential by construction
    SurvivalOptions survival_options;
    survival_options.seed = seed + 1;
    if (config.contains("paths")) survival_options.paths = config["paths"].get<std::size_t>();
    if (config.contains("steps")) survival_options.steps = config["steps"].get<long>();
    if (config.contains("c_grid")) survival_options.c_grid = require_vector(config, "c_grid");

    const auto states = harvest_drift_states(game, n_states, seed, 30);
    const auto drifts = drift_test(game.relative(), states, inner, seed + 2);
    const MartingaleReport survival = survival_report(game, survival_options);

    std::size_t drift_violations = 0, opponent_violations = 0;
    for (const DriftEstimate& e : drifts) {
        if (e.drift < std::max(0.0, e.lemma1_bound) - 3.0 * e.drift_se) ++drift_violations;
        if (e.opponent_drift > 3.0 * e.opponent_se) ++opponent_violations;
    }
    double min_share = 1.0;
    std::size_t compensator_violations = 0;
    const double separation = survival.separation.value_or(0.0);
    for (const SurvivalPathStats& p : survival.paths) {
        min_share = std::min(min_share, p.min_share);
        if (separation > 0.0 &&
            p.sum_sq_rest_share >
                4.0 * p.compensator_final / (separation * separation) * (1.0 + 1e-9) + 1e-12) {
            ++compensator_violations;
        }
    }

    CsvBuilder csv("t,drift,se,compensator");
    for (std::size_t t = 0; t < survival.drift_by_time.size(); ++t) {
        csv.row(static_cast<long>(t + 1), survival.drift_by_time[t],
                survival.drift_se_by_time[t], survival.compensator_mean[t]);
    }

    ExperimentResult result;
    result.kind = "diagnostics";
    result.csv_files["diagnostics.csv"] = csv.str();
    json summary;
    summary["experiment"] = "diagnostics";
    summary["seed"] = seed;
    summary["drift"] = {{"states", drifts.size()},
                        {"inner_samples", inner},
                        {"violations", drift_violations},
                        {"opponent_supermartingale_violations", opponent_violations}};
    summary["survival"] = {{"paths", survival.paths.size()},
                           {"steps", survival_options.steps},
                           {"min_share", round_json(min_share)},
                           {"compensator_bound_violations", compensator_violations}};
    if (survival.separation) summary["survival"]["separation"] = round_json(*survival.separation);
    json eta = json::array();
    for (std::size_t c = 0; c < survival.c_grid.size(); ++c) {
        long total = 0;
        for (const auto& p : survival.paths) total += p.eta[c];
        eta.push_back(json{{"c", round_json(survival.c_grid[c])},
                           {"mean_eta", round_json(static_cast<double>(total) /
                                                   static_cast<double>(survival.paths.size()))}});
    }
    summary["survival"]["eta"] = std::move(eta);
    result.summary_json = summary.dump(2) + "\n";
    return result;
}

ExperimentResult run_example1(const json& config, unsigned workers) {
    (void)workers;
    const std::uint64_t seed = require_seed(config);
    const SimplexVector relative(require_vector(config, "relative"));
    const double growth = require_number(config, "rho");
    const SimplexVector opponent(require_vector(config, "opponent"));
    const double initial_share =
        config.contains("initial_share") ? config["initial_share"].get<double>() : 0.5;
    const std::vector<double> levels = parse_levels(config);

    const auto points = example1_crossings(relative, growth, opponent, initial_share, levels);

    CsvBuilder csv("level,tau1,tau2,ratio");
    json rows = json::array();
    for (const Example1Point& p : points) {
        csv.row(p.level, p.tau_star, p.tau_opponent, p.ratio);
        rows.push_back(json{{"level", round_json(p.level)},
                            {"tau1", p.tau_star},
                            {"tau2", p.tau_opponent},
                            {"ratio", round_json(p.ratio)}});
    }

    ExperimentResult result;
    result.kind = "example1";
    result.csv_files["example1.csv"] = csv.str();
    json summary;
    summary["experiment"] = "example1";
    summary["seed"] = seed;
    summary["points"] = std::move(rows);
    result.summary_json = summary.dump(2) + "\n";
    return result;
}

} // namespace

GameConfig parse_game_config(const json& game) {
    if (!game.contains("payoffs")) throw ConfigError("game needs a 'payoffs' object");
    const json& payoffs = game["payoffs"];
    GrowthSpec growth = parse_growth(payoffs.at("rho"));
    RelativePayoffSpec relative = parse_relative(payoffs.at("relative"));
    const SimplexVector star = relative.mean();

    if (!game.contains("investors") || !game["investors"].is_array()) {
        throw ConfigError("game needs an 'investors' array");
    }
    std::vector<double> wealth;
    std::vector<StrategySpec> strategies;
    for (const auto& inv : game["investors"]) {
        wealth.push_back(require_number(inv, "wealth"));
        strategies.push_back(parse_strategy(inv.at("strategy"), star));
    }
    try {
        return GameConfig(std::move(wealth), std::move(strategies), std::move(growth),
                          std::move(relative));
    } catch (const InvalidSpec& e) {
        throw ConfigError(e.what());
    }
}

ExperimentResult run_experiment(const json& config, unsigned workers) {
    if (!config.is_object()) throw ConfigError("config must be a JSON object");
    const std::string kind = require_string(config, "experiment");
    ExperimentResult result;
    try {
        if (kind == "simulate") {
            result = run_simulate(config, workers);
        } else if (kind == "crossing") {
            result = run_crossing(config, workers);
        } else if (kind == "ratio_curve") {
            result = run_ratio_curve(config, workers);
        } else if (kind == "f_of_a") {
            result = run_f_of_a(config, workers);
        } else if (kind == "diagnostics") {
            result = run_diagnostics(config, workers);
        } else if (kind == "example1") {
            result = run_example1(config, workers);
        } else {
            throw ConfigError("unknown experiment kind '" + kind + "'");
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config error: ") + e.what());
    }
    result.plot_files = emit_plot_data(result);
    return result;
}

std::map<std::string, std::string> emit_plot_data(const ExperimentResult& result) {
    std::map<std::string, std::string> out;
    const json summary = json::parse(result.summary_json);
    if (result.kind == "ratio_curve") {
        CsvBuilder csv("level,ratio,ci_lo,ci_hi,theorem2_rhs");
        const double rhs = summary.contains("theorem2_rhs")
                               ? summary["theorem2_rhs"].get<double>()
                               : 1.0;
        for (const auto& p : summary["points"]) {
            const double ratio = p["ratio"].get<double>();
            const double ci = p["ci"].get<double>();
            csv.row(p["level"].get<double>(), ratio, ratio - ci, ratio + ci, rhs);
        }
        out["plot_ratio_curve.csv"] = csv.str();
    } else if (result.kind == "diagnostics") {
        // the diagnostics series is already in plot shape
        auto it = result.csv_files.find("diagnostics.csv");
        if (it != result.csv_files.end()) out["plot_diagnostics.csv"] = it->second;
    } else if (result.kind == "example1") {
        CsvBuilder csv("series,x,y,ci_lo,ci_hi");
        for (const auto& p : summary["points"]) {
            const double ratio = p["ratio"].get<double>();
            csv.row("ratio", p["level"].get<double>(), ratio, ratio, ratio);
        }
        out["plot_example1.csv"] = csv.str();
    } else if (result.kind == "crossing") {
        CsvBuilder csv("series,x,y,ci_lo,ci_hi");
        for (const auto& e : summary["estimates"]) {
            const double mean = e["mean_tau"].get<double>();
            const double se = e["se"].get<double>();
            csv.row("investor_" + std::to_string(e["investor"].get<int>()),
                    e["level"].get<double>(), mean, mean - se, mean + se);
        }
        out["plot_crossing.csv"] = csv.str();
    } else if (result.kind == "f_of_a") {
        CsvBuilder csv("series,x,y,ci_lo,ci_hi");
        for (const auto& e : summary["entries"]) {
            if (!e["feasible"].get<bool>()) continue;
            const double v = e["f_a"].get<double>();
            const double se = e["saa_se"].get<double>();
            csv.row("f_a", e["a"].get<double>(), v, v - se, v + se);
        }
        out["plot_f_of_a.csv"] = csv.str();
    }
    return out;
}

namespace {

void write_atomic(const std::filesystem::path& path, const std::string& contents) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open " + tmp.string() + " for writing");
        out << contents;
        if (!out.good()) throw Error("short write to " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

} // namespace

void write_outputs(const ExperimentResult& result, const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    write_atomic(out_dir / "results.json", result.summary_json);
    for (const auto& [name, contents] : result.csv_files) {
        write_atomic(out_dir / name, contents);
    }
    for (const auto& [name, contents] : result.plot_files) {
        write_atomic(out_dir / name, contents);
    }
}

int run_config_file(const std::filesystem::path& config_path,
                    const std::filesystem::path& out_dir, unsigned workers,
                    std::optional<std::uint64_t> seed_override) {
    json config;
    try {
        std::ifstream in(config_path);
        if (!in) {
            std::cerr << "error: cannot read config " << config_path << "\n";
            return 2;
        }
        config = json::parse(in);
    } catch (const json::exception& e) {
        std::cerr << "error: invalid JSON in " << config_path << ": " << e.what() << "\n";
        return 2;
    }
    if (seed_override) {
        if (!config.is_object()) {
            std::cerr << "error: config must be a JSON object\n";
            return 2;
        }
        config["seed"] = *seed_override;
    }
    try {
        const ExperimentResult result = run_experiment(config, workers);
        write_outputs(result, out_dir);
        std::cout << "experiment " << result.kind << " done; wrote results.json and "
                  << result.csv_files.size() + result.plot_files.size() << " series to "
                  << out_dir.string() << "\n";
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "error: invalid config: " << e.what() << "\n";
        return 2;
    } catch (const CensoringExceeded& e) {
        std::cerr << "error: censoring exceeded: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
}

} // namespace marketgame
