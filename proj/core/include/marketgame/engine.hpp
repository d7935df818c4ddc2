#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "marketgame/market_state.hpp"
#include "marketgame/numeric.hpp"
#include "marketgame/payoffs.hpp"
#include "marketgame/rng.hpp"
#include "marketgame/strategies.hpp"

namespace marketgame {

/// Full description of one market game: M >= 2 investors with positive initial
/// wealth and a strategy each, plus the payoff generators.
class GameConfig {
public:
    GameConfig(std::vector<double> initial_wealth, std::vector<StrategySpec> strategies,
               GrowthSpec growth, RelativePayoffSpec relative);

    std::size_t num_investors() const { return initial_wealth_.size(); }
    std::size_t num_assets() const { return relative_.num_assets(); }
    const std::vector<double>& initial_wealth() const { return initial_wealth_; }
    double total_initial_wealth() const;
    const std::vector<StrategySpec>& strategies() const { return strategies_; }
    const GrowthSpec& growth() const { return growth_; }
    const RelativePayoffSpec& relative() const { return relative_; }
    /// E R_1, resolved once per game.
    const SimplexVector& star() const { return star_; }

private:
    std::vector<double> initial_wealth_;
    std::vector<StrategySpec> strategies_;
    GrowthSpec growth_;
    RelativePayoffSpec relative_;
    SimplexVector star_;
};

struct MarketClearing {
    std::vector<double> prices; // p^n = sum_m lambda^{m,n} Y^m
    Matrix holdings;            // x^{m,n}; zero column where nothing is demanded
};

/// Equilibrium prices and share allocations for given proportions and wealths.
/// Homogeneous of degree 0 in wealth for the holdings, degree 1 for prices, so it
/// can be fed either absolute wealth or relative shares.
MarketClearing clear_market(const Matrix& proportions, std::span<const double> wealths);

/// One step of the wealth recursion: investors receive payoffs proportional to
/// their share holdings. Assets nobody demanded pay nobody; when some investor is
/// fully diversified that cannot happen and total wealth advances by exactly rho.
MarketState step(const MarketState& state, const Matrix& proportions, const PayoffStep& payoff);

struct RepresentativeReduction {
    double share;                    // combined share of everyone but the distinguished investor
    std::vector<double> proportions; // wealth-weighted mix of their proportions
    bool degenerate;                 // distinguished investor holds everything
};

/// Aggregate all investors except `distinguished` into one representative whose
/// proportions are their wealth-weighted mix. The reduced two-investor game
/// reproduces the distinguished investor's wealth path exactly.
RepresentativeReduction representative_reduction(const RelativeWealth& shares,
                                                 const Matrix& proportions,
                                                 std::size_t distinguished = 0);

/// Step-by-step game executor with incrementally memoized history.
///
/// History is only recorded when some strategy actually reads it (custom rules);
/// the shipped rules are O(1) per step regardless of path length.
class GameRunner {
public:
    GameRunner(const GameConfig& config, RngStream rng);

    const MarketState& state() const { return state_; }
    const Matrix& last_proportions() const { return last_proportions_; }
    const History& history() const { return history_; }
    const GameConfig& config() const { return *config_; }

    /// Realize strategies, clear the market, draw the payoff, advance wealth.
    void advance();

private:
    const GameConfig* config_;
    RngStream rng_;
    MarketState state_;
    Matrix last_proportions_;
    History history_;
    bool needs_history_;
};

struct WealthPath {
    std::vector<MarketState> states;  // t = 0..T
    std::vector<Matrix> proportions;  // realized lambda_t, t = 1..T
    std::vector<PayoffStep> payoffs;  // t = 1..T
};

WealthPath simulate_path(const GameConfig& config, long horizon, RngStream rng);

/// CSV dump of a path: t, ln_W, r_1..r_M, rho, R_1..R_N, lambda_{m,n} flattened.
std::string path_to_csv(const WealthPath& path);

} // namespace marketgame
