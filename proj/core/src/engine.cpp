#include "marketgame/engine.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <utility>

#include "marketgame/errors.hpp"

namespace marketgame {

GameConfig::GameConfig(std::vector<double> initial_wealth, std::vector<StrategySpec> strategies,
                       GrowthSpec growth, RelativePayoffSpec relative)
    : initial_wealth_(std::move(initial_wealth)),
      strategies_(std::move(strategies)),
      growth_(std::move(growth)),
      relative_(std::move(relative)),
      star_(relative_.mean()) {
    if (initial_wealth_.size() < 2) throw InvalidSpec("a game needs at least 2 investors");
    if (strategies_.size() != initial_wealth_.size()) {
        throw InvalidSpec("need one strategy per investor");
    }
    for (double y : initial_wealth_) {
        if (!(y > 0.0)) throw InvalidSpec("initial wealth must be strictly positive");
    }
    for (const auto& s : strategies_) {
        if (s.weights() && s.weights()->size() != num_assets()) {
            throw InvalidSpec("strategy dimension does not match the number of assets");
        }
    }
}

double GameConfig::total_initial_wealth() const {
    double sum = 0.0;
    for (double y : initial_wealth_) sum += y;
    return sum;
}

MarketClearing clear_market(const Matrix& proportions, std::span<const double> wealths) {
    const std::size_t m_count = proportions.rows();
    const std::size_t n_count = proportions.cols();
    MarketClearing out;
    out.prices.assign(n_count, 0.0);
    out.holdings = Matrix(m_count, n_count, 0.0);
    for (std::size_t n = 0; n < n_count; ++n) {
        double p = 0.0;
        for (std::size_t m = 0; m < m_count; ++m) p += proportions(m, n) * wealths[m];
        out.prices[n] = p;
        if (p > 0.0) {
            for (std::size_t m = 0; m < m_count; ++m) {
                out.holdings(m, n) = proportions(m, n) * wealths[m] / p;
            }
        }
        // p == 0: nobody demanded asset n; holdings stay 0 and the price is set to 0
    }
    return out;
}

MarketState step(const MarketState& state, const Matrix& proportions, const PayoffStep& payoff) {
    const std::size_t m_count = state.shares.size();
    const std::size_t n_count = payoff.relative.size();
    if (proportions.rows() != m_count || proportions.cols() != n_count) {
        throw InvalidSpec("proportions matrix has wrong shape");
    }

    if (!(payoff.growth > 0.0)) throw InvalidSpec("payoff growth factor must be positive");

    const MarketClearing clearing = clear_market(proportions, state.shares.shares());

    // growth factor of each investor's share: sum_n (lambda^{m,n}/beta^n) R^n with
    // zero-demand assets skipped. Does not depend on the investor's own share, so
    // the log track below stays accurate for shares far below machine epsilon.
    std::vector<double> factor(m_count, 0.0);
    for (std::size_t m = 0; m < m_count; ++m) {
        double f = 0.0;
        for (std::size_t n = 0; n < n_count; ++n) {
            const double beta = clearing.prices[n];
            if (beta > 0.0) f += (proportions(m, n) / beta) * payoff.relative[n];
        }
        factor[m] = f;
    }

    std::vector<double> unnormalized(m_count);
    double total = 0.0;
    for (std::size_t m = 0; m < m_count; ++m) {
        const double share = state.shares.share(m);
        double u;
        if (share == 0.0) {
            u = 0.0;
        } else if (std::isinf(factor[m])) {
            // lambda/beta overflowed: the investor monopolizes an asset priced at
            // their own vanishing wealth and snaps back to macroscopic scale; the
            // holdings route is bounded and exact enough there
            u = 0.0;
            for (std::size_t n = 0; n < n_count; ++n) {
                u += clearing.holdings(m, n) * payoff.relative[n];
            }
        } else {
            u = share * factor[m];
        }
        unnormalized[m] = u;
        total += u;
    }

    MarketState next;
    next.time = state.time + 1;
    next.relative_prices = clearing.prices;
    next.holdings = clearing.holdings;
    next.growth = payoff.growth;
    next.relative_payoffs.assign(payoff.relative.weights().begin(),
                                 payoff.relative.weights().end());

    if (!(total > 0.0)) {
        // every asset with positive payoff went unbought: the whole market is wiped out
        next.shares = state.shares;
        next.log_total_wealth = -std::numeric_limits<double>::infinity();
        return next;
    }

    const double log_total = std::log(total);
    std::vector<double> shares(m_count);
    std::vector<double> log_shares(m_count);
    for (std::size_t m = 0; m < m_count; ++m) {
        shares[m] = unnormalized[m] / total;
        // log track: exact even when the share is hundreds of orders of magnitude
        // below the leader's
        if (state.shares.share(m) > 0.0 && std::isfinite(factor[m]) && factor[m] > 0.0) {
            log_shares[m] = state.shares.log_share(m) + std::log(factor[m]) - log_total;
        } else if (unnormalized[m] > 0.0) {
            log_shares[m] = std::log(unnormalized[m]) - log_total;
        } else {
            log_shares[m] = -std::numeric_limits<double>::infinity();
        }
    }
    next.shares = RelativeWealth::from_tracks(std::move(shares), std::move(log_shares));
    next.log_total_wealth = state.log_total_wealth + std::log(payoff.growth) + log_total;
    return next;
}

RepresentativeReduction representative_reduction(const RelativeWealth& shares,
                                                 const Matrix& proportions,
                                                 std::size_t distinguished) {
    const std::size_t m_count = shares.size();
    const std::size_t n_count = proportions.cols();
    RepresentativeReduction out;
    out.proportions.assign(n_count, 0.0);
    // summing the others' shares directly avoids the 1 - r cancellation
    double rest = 0.0;
    for (std::size_t m = 0; m < m_count; ++m) {
        if (m != distinguished) rest += shares.share(m);
    }
    out.share = rest;
    out.degenerate = !(rest > 0.0);
    if (out.degenerate) return out; // proportions pinned to zero by convention
    for (std::size_t m = 0; m < m_count; ++m) {
        if (m == distinguished) continue;
        const double w = shares.share(m) / rest;
        for (std::size_t n = 0; n < n_count; ++n) {
            out.proportions[n] += w * proportions(m, n);
        }
    }
    return out;
}

namespace {

MarketState initial_state(const GameConfig& config) {
    MarketState s;
    s.time = 0;
    std::vector<double> shares = config.initial_wealth();
    const double w0 = config.total_initial_wealth();
    for (double& y : shares) y /= w0;
    s.shares = RelativeWealth::from_shares(std::move(shares));
    s.log_total_wealth = std::log(w0);
    return s;
}

} // namespace

GameRunner::GameRunner(const GameConfig& config, RngStream rng)
    : config_(&config), rng_(std::move(rng)), state_(initial_state(config)) {
    needs_history_ = false;
    for (const auto& s : config.strategies()) {
        if (s.kind() == StrategyKind::Custom) needs_history_ = true;
    }
    history_.initial_wealth = config.initial_wealth();
}

void GameRunner::advance() {
    const std::size_t m_count = config_->num_investors();
    const std::size_t n_count = config_->num_assets();

    Matrix proportions(m_count, n_count);
    for (std::size_t m = 0; m < m_count; ++m) {
        const SimplexVector realized =
            realize(config_->strategies()[m], history_, config_->star(), rng_);
        for (std::size_t n = 0; n < n_count; ++n) proportions(m, n) = realized[n];
    }

    // payoff is drawn only after all decisions for this step are fixed
    const PayoffStep payoff = draw_step(config_->growth(), config_->relative(), rng_);

    state_ = step(state_, proportions, payoff);
    last_proportions_ = proportions;
    if (needs_history_) {
        history_.past_proportions.push_back(std::move(proportions));
        history_.past_payoffs.push_back(payoff);
    }
}

WealthPath simulate_path(const GameConfig& config, long horizon, RngStream rng) {
    if (horizon < 1) throw InvalidSpec("simulation horizon must be at least 1");
    GameRunner runner(config, std::move(rng));
    WealthPath path;
    path.states.reserve(static_cast<std::size_t>(horizon) + 1);
    path.states.push_back(runner.state());
    for (long t = 1; t <= horizon; ++t) {
        runner.advance();
        path.states.push_back(runner.state());
        path.proportions.push_back(runner.last_proportions());
        const MarketState& s = runner.state();
        path.payoffs.push_back(PayoffStep{s.growth, SimplexVector(s.relative_payoffs)});
    }
    return path;
}

std::string path_to_csv(const WealthPath& path) {
    std::ostringstream out;
    const std::size_t m_count = path.states.front().shares.size();
    const std::size_t n_count = path.payoffs.empty() ? 0 : path.payoffs.front().relative.size();
    out << "t,ln_W";
    for (std::size_t m = 0; m < m_count; ++m) out << ",r_" << (m + 1);
    out << ",rho";
    for (std::size_t n = 0; n < n_count; ++n) out << ",R_" << (n + 1);
    for (std::size_t m = 0; m < m_count; ++m) {
        for (std::size_t n = 0; n < n_count; ++n) out << ",lambda_" << (m + 1) << "_" << (n + 1);
    }
    out << "\n";
    for (std::size_t t = 0; t < path.states.size(); ++t) {
        const MarketState& s = path.states[t];
        out << s.time << "," << format_sig12(s.log_total_wealth);
        for (std::size_t m = 0; m < m_count; ++m) out << "," << format_sig12(s.shares.share(m));
        if (t == 0) {
            for (std::size_t i = 0; i < 1 + n_count + m_count * n_count; ++i) out << ",";
        } else {
            const PayoffStep& p = path.payoffs[t - 1];
            out << "," << format_sig12(p.growth);
            for (std::size_t n = 0; n < n_count; ++n) out << "," << format_sig12(p.relative[n]);
            const Matrix& lam = path.proportions[t - 1];
            for (std::size_t m = 0; m < m_count; ++m) {
                for (std::size_t n = 0; n < n_count; ++n) out << "," << format_sig12(lam(m, n));
            }
        }
        out << "\n";
    }
    return out.str();
}

} // namespace marketgame
