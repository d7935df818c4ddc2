#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "marketgame/errors.hpp"
#include "marketgame/numeric.hpp"
#include "marketgame/simplex.hpp"

namespace marketgame {

/// Relative wealth of the investors: shares of total market wealth summing to 1.
///
/// Shares are kept both linearly and in log domain. The linear track is what the
/// market-clearing sums need; the log track keeps relative precision for shares
/// far below machine epsilon (an outcompeted investor's share decays exponentially
/// and would otherwise vanish into 1 - r rounding).
class RelativeWealth {
public:
    RelativeWealth() = default;

    static RelativeWealth from_shares(std::vector<double> shares);
    /// Engine constructor: both tracks already computed consistently.
    static RelativeWealth from_tracks(std::vector<double> shares, std::vector<double> log_shares);

    std::size_t size() const { return shares_.size(); }
    double share(std::size_t m) const { return shares_[m]; }
    double log_share(std::size_t m) const { return log_shares_[m]; }
    std::span<const double> shares() const { return shares_; }
    std::span<const double> log_shares() const { return log_shares_; }

private:
    std::vector<double> shares_;
    std::vector<double> log_shares_;
};

inline RelativeWealth RelativeWealth::from_shares(std::vector<double> shares) {
    double sum = 0.0;
    for (double s : shares) {
        if (!(s >= 0.0)) throw NonPositiveMass("relative wealth share is negative or NaN");
        sum += s;
    }
    if (!(sum > 0.0)) throw NonPositiveMass("relative wealth has no positive mass");
    RelativeWealth rw;
    rw.shares_ = std::move(shares);
    if (std::abs(sum - 1.0) > 1e-12) {
        for (double& s : rw.shares_) s /= sum;
    }
    rw.log_shares_.resize(rw.shares_.size());
    for (std::size_t m = 0; m < rw.shares_.size(); ++m) {
        rw.log_shares_[m] = std::log(rw.shares_[m]);
    }
    return rw;
}

inline RelativeWealth RelativeWealth::from_tracks(std::vector<double> shares,
                                                  std::vector<double> log_shares) {
    RelativeWealth rw;
    rw.shares_ = std::move(shares);
    rw.log_shares_ = std::move(log_shares);
    return rw;
}

/// Payoff factorization draw: total-payoff growth factor and relative payoffs on the simplex.
struct PayoffStep {
    double growth = 1.0;    // rho_t > 0
    SimplexVector relative; // R_t
};

/// Per-step market snapshot.
///
/// Wealth levels grow like e^(theta t) and overflow doubles on long paths, so the
/// state stores relative wealth plus ln W_t; absolute quantities are recovered on
/// demand. `relative_prices[n]` is the clearing price of asset n divided by the
/// total wealth at purchase time, i.e. p_{t-1}^n / W_{t-1}.
struct MarketState {
    long time = 0;
    RelativeWealth shares;                       // r_t
    double log_total_wealth = 0.0;               // ln W_t
    std::vector<double> relative_prices;         // empty at t = 0
    Matrix holdings;                             // x_t^{m,n}; empty at t = 0
    double growth = std::numeric_limits<double>::quiet_NaN(); // rho_t; NaN at t = 0
    std::vector<double> relative_payoffs;        // R_t; empty at t = 0

    double log_wealth(std::size_t m) const { return shares.log_share(m) + log_total_wealth; }
    double wealth(std::size_t m) const { return std::exp(log_wealth(m)); }
    double total_wealth() const { return std::exp(log_total_wealth); }
    double price(std::size_t n, double log_total_prev) const {
        return relative_prices[n] * std::exp(log_total_prev);
    }
};

} // namespace marketgame
