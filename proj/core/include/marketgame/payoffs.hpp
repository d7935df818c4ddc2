#pragma once

#include <cstddef>
#include <vector>

#include "marketgame/market_state.hpp"
#include "marketgame/rng.hpp"
#include "marketgame/simplex.hpp"

namespace marketgame {

enum class GrowthKind { Lognormal, Discrete, Constant };

/// Distribution of the one-period growth factor rho_t of the total payoff.
///
/// Supported families all have exact log-moments, so theta = E ln rho and
/// sigma = sd(ln rho) come out in closed form rather than from nested sampling.
/// Construction rejects specs with theta <= 0.
class GrowthSpec {
public:
    static GrowthSpec lognormal(double log_mean, double log_stddev);
    static GrowthSpec discrete(std::vector<double> values, std::vector<double> probs);
    static GrowthSpec constant(double value);

    GrowthKind kind() const { return kind_; }
    double theta() const { return theta_; }  // E ln rho, nats/step
    double sigma() const { return sigma_; }  // sd of ln rho, nats/step

    double draw(RngStream& rng) const;

    // discrete support accessors (empty for other kinds)
    const std::vector<double>& values() const { return values_; }
    const std::vector<double>& probs() const { return probs_; }

private:
    GrowthSpec() = default;
    GrowthKind kind_ = GrowthKind::Constant;
    double theta_ = 0.0;
    double sigma_ = 0.0;
    double log_mean_ = 0.0;
    double log_stddev_ = 0.0;
    std::vector<double> values_;
    std::vector<double> probs_;
};

struct GrowthStats {
    double theta;
    double sigma;
};

GrowthStats growth_stats(const GrowthSpec& growth);

enum class RelativeKind { Dirichlet, Discrete, Constant };

/// Distribution of the relative payoffs R_t on the simplex, i.i.d. across steps.
///
/// The mean E R_1 (the proportional-to-expected-payoffs strategy) and
/// epsilon = min_n E R_1^n are exact for every family. The linear-independence
/// flag reports whether no nonzero c has sum_n c^n R^n = 0 almost surely; the
/// separation machinery refuses specs where it is false.
class RelativePayoffSpec {
public:
    static RelativePayoffSpec dirichlet(std::vector<double> alpha);
    static RelativePayoffSpec discrete(std::vector<SimplexVector> points, std::vector<double> probs);
    static RelativePayoffSpec constant(SimplexVector point);

    RelativeKind kind() const { return kind_; }
    std::size_t num_assets() const { return mean_.size(); }
    const SimplexVector& mean() const { return mean_; } // E R_1
    double epsilon() const { return epsilon_; }         // min_n E R_1^n
    bool linearly_independent() const { return linearly_independent_; }
    /// Exact finite-sum expectations are available (discrete/constant support).
    bool has_exact_expectation() const { return kind_ != RelativeKind::Dirichlet; }

    SimplexVector draw(RngStream& rng) const;

    const std::vector<SimplexVector>& points() const { return points_; }
    const std::vector<double>& probs() const { return probs_; }
    const std::vector<double>& alpha() const { return alpha_; }

private:
    explicit RelativePayoffSpec(SimplexVector mean) : mean_(std::move(mean)) {}
    RelativeKind kind_ = RelativeKind::Constant;
    SimplexVector mean_;
    double epsilon_ = 0.0;
    bool linearly_independent_ = false;
    std::vector<SimplexVector> points_;
    std::vector<double> probs_;
    std::vector<double> alpha_;
};

/// One independent draw (rho_t, R_t); deterministic given the rng stream.
PayoffStep draw_step(const GrowthSpec& growth, const RelativePayoffSpec& relative, RngStream& rng);

struct PayoffVector {
    std::vector<double> values; // X_t^n = rho R^n exp(prev_log_total)
    double log_total;           // prev_log_total + ln rho
};

/// Absolute payoff vector for one step given the previous log total payoff.
PayoffVector payoff_vector(const PayoffStep& step, double prev_log_total);

/// Deterministic one-growth-asset family: payoffs R^n rho^t with unit initial wealth.
struct Example1Payoffs {
    SimplexVector relative; // R
    double log_scale;       // t ln rho
    std::vector<double> values() const;
};

Example1Payoffs example1_payoffs(const SimplexVector& relative, double growth, long time);

} // namespace marketgame
