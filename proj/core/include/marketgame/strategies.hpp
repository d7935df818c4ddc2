#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "marketgame/market_state.hpp"
#include "marketgame/numeric.hpp"
#include "marketgame/payoffs.hpp"
#include "marketgame/rng.hpp"
#include "marketgame/simplex.hpp"

namespace marketgame {

/// Observable history handed to a strategy deciding the proportions for step t:
/// initial wealth plus everything realized up to t-1. The payoff of step t is
/// structurally absent, which is what keeps decisions previsible.
struct History {
    std::vector<double> initial_wealth;    // Y_0
    std::vector<Matrix> past_proportions;  // realized lambda_1 .. lambda_{t-1}, each M x N
    std::vector<PayoffStep> past_payoffs;  // payoff draws 1 .. t-1

    long next_time() const { return static_cast<long>(past_proportions.size()) + 1; }
};

enum class StrategyKind { LambdaStar, Constant, Separated, Custom };

/// Custom rules must be pure functions of (history, rng) so paths can run concurrently.
using CustomRule = std::function<SimplexVector(const History&, RngStream&)>;

/// A rule mapping observable history to investment proportions.
class StrategySpec {
public:
    /// Invest proportionally to expected relative payoffs (resolved against the
    /// game's payoff spec when realized).
    static StrategySpec lambda_star();
    static StrategySpec constant(SimplexVector weights);
    /// Constant strategy validated to stay at L2 distance >= `separation` from
    /// `star` with every coordinate >= `floor` > 0.
    static StrategySpec separated(SimplexVector base, const SimplexVector& star,
                                  double separation, double floor);
    static StrategySpec custom(CustomRule rule, std::string name = "custom");

    StrategyKind kind() const { return kind_; }
    const std::optional<SimplexVector>& weights() const { return weights_; }
    double separation() const { return separation_; }
    double floor() const { return floor_; }
    const std::string& name() const { return name_; }
    const CustomRule& rule() const { return rule_; }

private:
    StrategySpec() = default;
    StrategyKind kind_ = StrategyKind::LambdaStar;
    std::optional<SimplexVector> weights_;
    double separation_ = 0.0;
    double floor_ = 0.0;
    CustomRule rule_;
    std::string name_;
};

/// The proportional-to-expected-relative-payoffs vector E R_1 of a payoff spec.
SimplexVector lambda_star(const RelativePayoffSpec& relative);

/// Validating factory matching StrategySpec::separated.
StrategySpec separated_strategy(SimplexVector base, const SimplexVector& star,
                                double separation, double floor);

/// Realized proportions for the step `history.next_time()`.
SimplexVector realize(const StrategySpec& strategy, const History& history,
                      const SimplexVector& star, RngStream& rng);

} // namespace marketgame
