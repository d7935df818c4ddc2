#include "marketgame/stopping.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <thread>
#include <utility>

#include "marketgame/errors.hpp"
#include "marketgame/numeric.hpp"

namespace marketgame {

namespace {

/// Static fan-out over path indices; results must be written to per-index slots so
/// the reduction order (and therefore every emitted byte) is worker-count
/// independent.
void parallel_for_paths(std::size_t count, unsigned workers,
                        const std::function<void(std::size_t)>& body) {
    if (workers <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    const unsigned n_workers = std::min<unsigned>(workers, static_cast<unsigned>(count));
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (unsigned w = 0; w < n_workers; ++w) {
        const std::size_t begin = count * w / n_workers;
        const std::size_t end = count * (w + 1) / n_workers;
        pool.emplace_back([&body, begin, end] {
            for (std::size_t i = begin; i < end; ++i) body(i);
        });
    }
    for (auto& t : pool) t.join();
}

/// Expected log growth of a constant strategy's wealth relative to total wealth,
/// E ln sum_n w^n R^n / lambda*^n; exact for finite support, sampled otherwise.
double relative_log_growth(const RelativePayoffSpec& relative, std::span<const double> weights) {
    const SimplexVector& star = relative.mean();
    auto value = [&](const SimplexVector& r) {
        double s = 0.0;
        for (std::size_t i = 0; i < weights.size(); ++i) s += weights[i] * r[i] / star[i];
        return s > 0.0 ? std::log(s) : -std::numeric_limits<double>::infinity();
    };
    if (relative.has_exact_expectation()) {
        double out = 0.0;
        for (std::size_t j = 0; j < relative.points().size(); ++j) {
            out += relative.probs()[j] * value(relative.points()[j]);
        }
        return out;
    }
    RngStream rng(99, 0);
    RunningStats stats;
    for (int s = 0; s < 100000; ++s) stats.add(value(relative.draw(rng)));
    return stats.mean;
}

} // namespace

std::optional<long> crossing_time(const WealthPath& path, std::size_t investor, double level) {
    if (!(level > 0.0)) throw DomainError("crossing level must be positive");
    const double log_level = std::log(level);
    for (const MarketState& s : path.states) {
        if (s.log_wealth(investor) >= log_level) return s.time;
    }
    return std::nullopt;
}

long auto_horizon(const GameConfig& config, double max_level, std::size_t investor) {
    const TheoremBounds bounds = make_theorem_bounds(config);
    const StrategySpec& strat = config.strategies().at(investor);
    const double y0 = config.initial_wealth()[investor];

    if (strat.kind() == StrategyKind::LambdaStar) {
        if (!(max_level > y0)) return 16;
        return static_cast<long>(std::ceil(4.0 * bounds.upper(max_level))) + 1;
    }
    if (strat.kind() == StrategyKind::Constant || strat.kind() == StrategyKind::Separated) {
        // asymptotic wealth growth rate of a constant strategy against lambda*:
        // theta plus its relative log growth once the lambda* side dominates
        const double rate =
            bounds.theta + std::min(relative_log_growth(config.relative(),
                                                        strat.weights()->weights()),
                                    0.0);
        if (!(rate > 1e-9)) {
            throw DomainError(
                "investor " + std::to_string(investor + 1) +
                " has non-positive asymptotic growth; expected crossing time may be "
                "infinite -- set the horizon explicitly");
        }
        const double scale = (std::log(max_level) - std::log(y0)) / rate;
        return static_cast<long>(std::ceil(8.0 * std::max(scale, 4.0))) + 1;
    }
    throw DomainError("auto horizon is not available for custom strategies; set it explicitly");
}

CrossingEstimate estimate_expected_tau(const GameConfig& config, std::size_t investor,
                                       double level, const CrossingOptions& options) {
    if (options.paths < 100) throw InvalidSpec("need at least 100 paths");
    if (!(level > 0.0)) throw DomainError("crossing level must be positive");
    const long horizon =
        options.horizon > 0 ? options.horizon : auto_horizon(config, level, investor);
    const double log_level = std::log(level);

    std::vector<long> taus(options.paths, -1);
    parallel_for_paths(options.paths, options.workers, [&](std::size_t p) {
        GameRunner runner(config, RngStream(options.seed, p));
        if (runner.state().log_wealth(investor) >= log_level) {
            taus[p] = 0;
            return;
        }
        for (long t = 1; t <= horizon; ++t) {
            runner.advance();
            if (runner.state().log_wealth(investor) >= log_level) {
                taus[p] = t;
                return;
            }
        }
    });

    CrossingEstimate est;
    est.level = level;
    est.horizon = horizon;
    RunningStats stats;
    for (long tau : taus) {
        if (tau >= 0) {
            stats.add(static_cast<double>(tau));
        } else {
            ++est.censored;
        }
    }
    est.paths_used = stats.count;
    est.mean_tau = stats.mean;
    est.std_error = stats.std_error();
    const double censored_fraction =
        static_cast<double>(est.censored) / static_cast<double>(options.paths);
    est.valid = censored_fraction <= options.censor_bound;
    if (!est.valid) {
        throw CensoringExceeded("censored fraction " + std::to_string(censored_fraction) +
                                " exceeds bound " + std::to_string(options.censor_bound) +
                                " at level " + std::to_string(level) + " (horizon " +
                                std::to_string(horizon) + ")");
    }
    return est;
}

std::vector<double> level_grid(double min_level, double max_level, double factor) {
    if (!(min_level > 0.0) || !(max_level >= min_level) || !(factor > 1.0)) {
        throw InvalidSpec("level grid needs 0 < min <= max and factor > 1");
    }
    std::vector<double> levels;
    for (double l = min_level; l <= max_level * (1.0 + 1e-12); l *= factor) {
        levels.push_back(l);
    }
    return levels;
}

RatioCurve ratio_curve(const GameConfig& config, const std::vector<double>& levels,
                       std::size_t opponent, const CrossingOptions& options) {
    if (config.strategies().front().kind() != StrategyKind::LambdaStar) {
        throw InvalidSpec("ratio curve needs investor 1 to play lambda_star");
    }
    if (opponent == 0 || opponent >= config.num_investors()) {
        throw InvalidSpec("opponent index out of range");
    }
    if (levels.empty()) throw InvalidSpec("ratio curve needs at least one level");
    if (!std::is_sorted(levels.begin(), levels.end())) {
        throw InvalidSpec("levels must be increasing");
    }

    const double max_level = levels.back();
    long horizon = options.horizon;
    if (horizon <= 0) {
        horizon = std::max(auto_horizon(config, max_level, 0),
                           auto_horizon(config, max_level, opponent));
    }

    std::vector<double> log_levels(levels.size());
    for (std::size_t i = 0; i < levels.size(); ++i) log_levels[i] = std::log(levels[i]);

    // flat (level x path) crossing-time tables, filled by path index
    const std::size_t n_levels = levels.size();
    std::vector<long> tau_star(n_levels * options.paths, -1);
    std::vector<long> tau_opp(n_levels * options.paths, -1);

    parallel_for_paths(options.paths, options.workers, [&](std::size_t p) {
        GameRunner runner(config, RngStream(options.seed, p));
        std::size_t next_star = 0, next_opp = 0;
        auto record = [&](long t) {
            const MarketState& s = runner.state();
            const double w_star = s.log_wealth(0);
            const double w_opp = s.log_wealth(opponent);
            while (next_star < n_levels && w_star >= log_levels[next_star]) {
                tau_star[next_star * options.paths + p] = t;
                ++next_star;
            }
            while (next_opp < n_levels && w_opp >= log_levels[next_opp]) {
                tau_opp[next_opp * options.paths + p] = t;
                ++next_opp;
            }
        };
        record(0);
        for (long t = 1; t <= horizon && (next_star < n_levels || next_opp < n_levels); ++t) {
            runner.advance();
            record(t);
        }
    });

    const TheoremBounds bounds = make_theorem_bounds(config);
    RatioCurve curve;
    curve.horizon = horizon;
    curve.separation = opponent_separation(config, opponent);
    if (curve.separation && config.relative().linearly_independent()) {
        const FofA f = compute_f(config.relative(), *curve.separation);
        if (f.feasible) {
            curve.f_of_a = f.value;
            curve.theorem2_rhs = theorem2_rhs(f, bounds.theta);
        }
    }

    for (std::size_t i = 0; i < n_levels; ++i) {
        RatioPoint point;
        point.level = levels[i];
        RunningStats star_stats, opp_stats;
        PairedStats pair;
        for (std::size_t p = 0; p < options.paths; ++p) {
            const long ts = tau_star[i * options.paths + p];
            const long to = tau_opp[i * options.paths + p];
            if (ts >= 0) star_stats.add(static_cast<double>(ts));
            if (to >= 0) opp_stats.add(static_cast<double>(to));
            if (ts >= 0 && to >= 0) pair.add(static_cast<double>(ts), static_cast<double>(to));
        }
        auto fill = [&](CrossingEstimate& est, const RunningStats& stats) {
            est.level = levels[i];
            est.horizon = horizon;
            est.paths_used = stats.count;
            est.censored = options.paths - stats.count;
            est.mean_tau = stats.mean;
            est.std_error = stats.std_error();
            est.valid = static_cast<double>(est.censored) / static_cast<double>(options.paths) <=
                        options.censor_bound;
        };
        fill(point.investor1, star_stats);
        fill(point.opponent, opp_stats);
        if (!point.investor1.valid || !point.opponent.valid) {
            throw CensoringExceeded("censoring bound exceeded at level " +
                                    std::to_string(levels[i]) + " (horizon " +
                                    std::to_string(horizon) + ")");
        }
        point.pairs = pair.count;
        point.ratio = pair.ratio();
        point.ci = pair.ratio_std_error();
        point.lower_bound_tau =
            levels[i] >= bounds.total_initial_wealth ? bounds.lower(levels[i]) : 0.0;
        point.upper_bound_tau =
            levels[i] > bounds.investor_initial_wealth ? bounds.upper(levels[i]) : 0.0;
        curve.points.push_back(std::move(point));
    }
    return curve;
}

std::vector<Example1Point> example1_crossings(const SimplexVector& relative, double growth,
                                              const SimplexVector& opponent,
                                              double initial_share,
                                              const std::vector<double>& levels) {
    if (!(initial_share > 0.0 && initial_share < 1.0)) {
        throw DomainError("initial share must lie strictly between 0 and 1");
    }
    // the deterministic family is the degenerate case of the general generators
    GameConfig config({initial_share, 1.0 - initial_share},
                      {StrategySpec::lambda_star(), StrategySpec::constant(opponent)},
                      GrowthSpec::constant(growth), RelativePayoffSpec::constant(relative));
    GameRunner runner(config, RngStream(0, 0));

    std::vector<double> log_levels(levels.size());
    for (std::size_t i = 0; i < levels.size(); ++i) log_levels[i] = std::log(levels[i]);
    std::vector<long> tau_star(levels.size(), -1), tau_opp(levels.size(), -1);
    std::size_t next_star = 0, next_opp = 0;
    auto record = [&](long t) {
        const double w_star = runner.state().log_wealth(0);
        const double w_opp = runner.state().log_wealth(1);
        while (next_star < levels.size() && w_star >= log_levels[next_star]) {
            tau_star[next_star++] = t;
        }
        while (next_opp < levels.size() && w_opp >= log_levels[next_opp]) {
            tau_opp[next_opp++] = t;
        }
    };
    record(0);
    const long safety_cap = 100000000;
    for (long t = 1; next_star < levels.size() || next_opp < levels.size(); ++t) {
        if (t > safety_cap) throw NumericalFailure("example1 run failed to cross all levels");
        runner.advance();
        record(t);
    }
    std::vector<Example1Point> out;
    out.reserve(levels.size());
    for (std::size_t i = 0; i < levels.size(); ++i) {
        out.push_back(Example1Point{levels[i], tau_star[i], tau_opp[i],
                                    static_cast<double>(tau_star[i]) /
                                        static_cast<double>(tau_opp[i])});
    }
    return out;
}

TreeExpectation exact_tau_by_enumeration(const GameConfig& config, std::size_t investor,
                                         double level, int max_depth) {
    if (!config.relative().has_exact_expectation() ||
        config.growth().kind() == GrowthKind::Lognormal) {
        throw DomainError("exhaustive enumeration needs finite payoff support");
    }
    for (const auto& s : config.strategies()) {
        if (s.kind() == StrategyKind::Custom) {
            throw DomainError("exhaustive enumeration needs history-independent strategies");
        }
    }
    const std::size_t m_count = config.num_investors();
    const std::size_t n_count = config.num_assets();

    // constant realized proportions
    Matrix proportions(m_count, n_count);
    History empty_history;
    RngStream rng(0, 0);
    for (std::size_t m = 0; m < m_count; ++m) {
        const SimplexVector r = realize(config.strategies()[m], empty_history, config.star(), rng);
        for (std::size_t n = 0; n < n_count; ++n) proportions(m, n) = r[n];
    }

    const double log_level = std::log(level);
    std::vector<double> prob_by_tau(static_cast<std::size_t>(max_depth) + 1, 0.0);
    double unresolved = 0.0;

    MarketState root;
    root.time = 0;
    {
        std::vector<double> shares = config.initial_wealth();
        const double w0 = config.total_initial_wealth();
        for (double& y : shares) y /= w0;
        root.shares = RelativeWealth::from_shares(std::move(shares));
        root.log_total_wealth = std::log(w0);
    }

    if (root.log_wealth(investor) >= log_level) {
        prob_by_tau[0] = 1.0;
    } else {
        const auto& g_values = config.growth().values();
        const auto& g_probs = config.growth().probs();
        const auto& r_points = config.relative().points();
        const auto& r_probs = config.relative().probs();
        // depth-first over the product support, pruning crossed branches
        std::function<void(const MarketState&, int, double)> visit =
            [&](const MarketState& state, int depth, double prob) {
                if (depth == max_depth) {
                    unresolved += prob;
                    return;
                }
                for (std::size_t gi = 0; gi < g_values.size(); ++gi) {
                    for (std::size_t ri = 0; ri < r_points.size(); ++ri) {
                        const double p = prob * g_probs[gi] * r_probs[ri];
                        if (p == 0.0) continue;
                        const MarketState next =
                            step(state, proportions, PayoffStep{g_values[gi], r_points[ri]});
                        if (next.log_wealth(investor) >= log_level) {
                            prob_by_tau[static_cast<std::size_t>(depth) + 1] += p;
                        } else {
                            visit(next, depth + 1, p);
                        }
                    }
                }
            };
        visit(root, 0, 1.0);
    }

    TreeExpectation out;
    out.unresolved_mass = unresolved;
    out.fully_resolved = unresolved == 0.0;
    double mean = 0.0;
    for (std::size_t t = 0; t < prob_by_tau.size(); ++t) {
        mean += static_cast<double>(t) * prob_by_tau[t];
    }
    // second algebraic route: E tau = sum_{t >= 0} P(tau > t)
    double cdf = 0.0, survival_sum = 0.0;
    for (std::size_t t = 0; t + 1 < prob_by_tau.size(); ++t) {
        cdf += prob_by_tau[t];
        survival_sum += 1.0 - cdf;
    }
    out.expected_tau = mean;
    out.expected_tau_survival = survival_sum;
    return out;
}

} // namespace marketgame
