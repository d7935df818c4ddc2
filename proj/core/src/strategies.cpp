#include "marketgame/strategies.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "marketgame/errors.hpp"

namespace marketgame {

StrategySpec StrategySpec::lambda_star() {
    StrategySpec s;
    s.kind_ = StrategyKind::LambdaStar;
    s.name_ = "lambda_star";
    return s;
}

StrategySpec StrategySpec::constant(SimplexVector weights) {
    StrategySpec s;
    s.kind_ = StrategyKind::Constant;
    s.weights_ = std::move(weights);
    s.name_ = "constant";
    return s;
}

StrategySpec StrategySpec::separated(SimplexVector base, const SimplexVector& star,
                                     double separation, double floor) {
    if (!(separation > 0.0)) throw InvalidSpec("separation radius must be positive");
    if (!(floor > 0.0)) throw InvalidSpec("proportion floor must be positive");
    if (base.size() != star.size()) throw InvalidSpec("strategy dimension mismatch");
    const double dist = l2_distance(base.weights(), star.weights());
    if (dist < separation - 1e-15) {
        throw SeparationViolated("strategy at L2 distance " + std::to_string(dist) +
                                 " from lambda*, needs >= " + std::to_string(separation));
    }
    if (base.min_weight() < floor) {
        throw FloorViolated("strategy has coordinate " + std::to_string(base.min_weight()) +
                            " below floor " + std::to_string(floor));
    }
    StrategySpec s;
    s.kind_ = StrategyKind::Separated;
    s.weights_ = std::move(base);
    s.separation_ = separation;
    s.floor_ = floor;
    s.name_ = "separated";
    return s;
}

StrategySpec StrategySpec::custom(CustomRule rule, std::string name) {
    if (!rule) throw InvalidSpec("custom strategy needs a callable rule");
    StrategySpec s;
    s.kind_ = StrategyKind::Custom;
    s.rule_ = std::move(rule);
    s.name_ = std::move(name);
    return s;
}

SimplexVector lambda_star(const RelativePayoffSpec& relative) { return relative.mean(); }

StrategySpec separated_strategy(SimplexVector base, const SimplexVector& star,
                                double separation, double floor) {
    return StrategySpec::separated(std::move(base), star, separation, floor);
}

SimplexVector realize(const StrategySpec& strategy, const History& history,
                      const SimplexVector& star, RngStream& rng) {
    switch (strategy.kind()) {
        case StrategyKind::LambdaStar:
            return star;
        case StrategyKind::Constant:
            return *strategy.weights();
        case StrategyKind::Separated: {
            const SimplexVector& out = *strategy.weights();
            // constant emission; revalidate the per-step contract cheaply
            if (out.min_weight() < strategy.floor() ||
                l2_distance(out.weights(), star.weights()) < strategy.separation() - 1e-12) {
                throw SeparationViolated("separated strategy left its admissible set");
            }
            return out;
        }
        case StrategyKind::Custom: {
            // re-wrap through SimplexVector: whatever the callback returns is
            // renormalized or rejected
            SimplexVector out = strategy.rule()(history, rng);
            return make_simplex(out.as_vector());
        }
    }
    return star;
}

} // namespace marketgame
