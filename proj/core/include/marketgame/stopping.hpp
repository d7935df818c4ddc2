#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "marketgame/analysis.hpp"
#include "marketgame/engine.hpp"

namespace marketgame {

/// First time an investor's wealth reaches or exceeds a level; t = 0 counts.
/// Compared in log domain for overflow safety. nullopt = not crossed on the path.
std::optional<long> crossing_time(const WealthPath& path, std::size_t investor, double level);

struct CrossingEstimate {
    double level = 0.0;
    double mean_tau = 0.0;
    double std_error = 0.0;
    std::size_t paths_used = 0; // uncensored paths entering the mean
    std::size_t censored = 0;
    long horizon = 0;
    bool valid = false; // censored fraction within the configured bound
};

struct CrossingOptions {
    std::size_t paths = 10000;
    long horizon = 0; // 0 = auto-sized from the theoretical bounds
    std::uint64_t seed = 0;
    double censor_bound = 1e-3; // max tolerated censored fraction
    unsigned workers = 1;
};

/// Horizon large enough that censoring is negligible: 4x the theoretical upper
/// bound for the lambda*-investor; investors with a slower asymptotic growth rate
/// (constant strategies away from lambda*) get 8x their own time scale.
long auto_horizon(const GameConfig& config, double max_level, std::size_t investor);

/// Monte Carlo estimate of E tau_level for one investor. Censored paths are
/// excluded from the mean and counted; throws CensoringExceeded when they exceed
/// the bound.
CrossingEstimate estimate_expected_tau(const GameConfig& config, std::size_t investor,
                                       double level, const CrossingOptions& options);

struct RatioPoint {
    double level = 0.0;
    CrossingEstimate investor1; // lambda* player, stats over its own uncensored paths
    CrossingEstimate opponent;
    double ratio = 0.0; // ratio of means over pair-complete paths
    double ci = 0.0;    // one delta-method standard error of the ratio
    std::size_t pairs = 0;
    double lower_bound_tau = 0.0; // Wald sandwich for the lambda* investor
    double upper_bound_tau = 0.0;
};

struct RatioCurve {
    std::vector<RatioPoint> points;
    std::optional<double> separation;    // opponent L2 distance from lambda*
    std::optional<double> f_of_a;        // f at that separation (when defined)
    std::optional<double> theorem2_rhs;  // 1 - (|f| ^ theta)/theta
    long horizon = 0;
};

/// Geometric grid of levels: from `min_level` by factor `factor` up to `max_level`.
std::vector<double> level_grid(double min_level, double max_level, double factor = 10.0);

/// Expected-crossing-time ratio of the lambda*-investor to an opponent over a
/// level grid. Both times come from the same simulated market per path (common
/// random numbers), so the per-level ratio is a paired ratio of means with a
/// delta-method interval.
RatioCurve ratio_curve(const GameConfig& config, const std::vector<double>& levels,
                       std::size_t opponent, const CrossingOptions& options);

/// Deterministic one-growth-asset run: exact integer crossing times per level for
/// the lambda*-investor (plays R) and a constant opponent.
struct Example1Point {
    double level;
    long tau_star;
    long tau_opponent;
    double ratio;
};

std::vector<Example1Point> example1_crossings(const SimplexVector& relative, double growth,
                                              const SimplexVector& opponent,
                                              double initial_share,
                                              const std::vector<double>& levels);

/// Depth-limited exhaustive enumeration over the payoff support: exact E tau when
/// every branch crosses within the depth. Independent of the Monte Carlo path.
struct TreeExpectation {
    bool fully_resolved = false;
    double expected_tau = 0.0;        // sum over leaves of P * tau
    double expected_tau_survival = 0.0; // independent route: sum_t P(tau > t)
    double unresolved_mass = 0.0;
};

TreeExpectation exact_tau_by_enumeration(const GameConfig& config, std::size_t investor,
                                         double level, int max_depth);

} // namespace marketgame
