#include "marketgame/payoffs.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "marketgame/errors.hpp"

namespace marketgame {

namespace {

void validate_probs(const std::vector<double>& probs, std::size_t expected) {
    if (probs.size() != expected) {
        throw InvalidSpec("support and probability lists differ in length");
    }
    double sum = 0.0;
    for (double p : probs) {
        if (!(p >= 0.0)) throw InvalidSpec("probabilities must be nonnegative");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        throw InvalidSpec("probabilities must sum to 1, got " + std::to_string(sum));
    }
}

// rank of the support matrix (points as rows) by Gaussian elimination
std::size_t support_rank(const std::vector<SimplexVector>& points) {
    const std::size_t rows = points.size();
    const std::size_t cols = points.front().size();
    std::vector<std::vector<double>> a(rows, std::vector<double>(cols));
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) a[i][j] = points[i][j];
    }
    const double tol = 1e-12;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pivot = rank;
        for (std::size_t i = rank + 1; i < rows; ++i) {
            if (std::abs(a[i][col]) > std::abs(a[pivot][col])) pivot = i;
        }
        if (std::abs(a[pivot][col]) <= tol) continue;
        std::swap(a[pivot], a[rank]);
        for (std::size_t i = rank + 1; i < rows; ++i) {
            const double f = a[i][col] / a[rank][col];
            for (std::size_t j = col; j < cols; ++j) a[i][j] -= f * a[rank][j];
        }
        ++rank;
    }
    return rank;
}

} // namespace

GrowthSpec GrowthSpec::lognormal(double log_mean, double log_stddev) {
    if (!(log_stddev >= 0.0)) throw InvalidSpec("lognormal log-stddev must be nonnegative");
    GrowthSpec g;
    g.kind_ = GrowthKind::Lognormal;
    g.log_mean_ = log_mean;
    g.log_stddev_ = log_stddev;
    g.theta_ = log_mean;
    g.sigma_ = log_stddev;
    if (!(g.theta_ > 0.0)) {
        throw NonPositiveDrift("growth spec needs E ln rho > 0, got " + std::to_string(g.theta_));
    }
    return g;
}

GrowthSpec GrowthSpec::discrete(std::vector<double> values, std::vector<double> probs) {
    if (values.empty()) throw InvalidSpec("discrete growth needs at least one support point");
    validate_probs(probs, values.size());
    for (double v : values) {
        if (!(v > 0.0)) throw InvalidSpec("growth factors must be strictly positive");
    }
    GrowthSpec g;
    g.kind_ = GrowthKind::Discrete;
    g.values_ = std::move(values);
    g.probs_ = std::move(probs);
    double theta = 0.0;
    for (std::size_t i = 0; i < g.values_.size(); ++i) {
        theta += g.probs_[i] * std::log(g.values_[i]);
    }
    double var = 0.0;
    for (std::size_t i = 0; i < g.values_.size(); ++i) {
        const double d = std::log(g.values_[i]) - theta;
        var += g.probs_[i] * d * d;
    }
    g.theta_ = theta;
    g.sigma_ = std::sqrt(var);
    if (!(g.theta_ > 0.0)) {
        throw NonPositiveDrift("growth spec needs E ln rho > 0, got " + std::to_string(g.theta_));
    }
    return g;
}

GrowthSpec GrowthSpec::constant(double value) {
    if (!(value > 0.0)) throw InvalidSpec("growth factor must be strictly positive");
    GrowthSpec g;
    g.kind_ = GrowthKind::Constant;
    g.values_ = {value};
    g.probs_ = {1.0};
    g.theta_ = std::log(value);
    g.sigma_ = 0.0;
    if (!(g.theta_ > 0.0)) {
        throw NonPositiveDrift("constant growth needs rho > 1, got " + std::to_string(value));
    }
    return g;
}

double GrowthSpec::draw(RngStream& rng) const {
    switch (kind_) {
        case GrowthKind::Lognormal:
            return std::exp(rng.normal(log_mean_, log_stddev_));
        case GrowthKind::Discrete:
            return values_[rng.categorical(probs_)];
        case GrowthKind::Constant:
            return values_[0];
    }
    return values_[0];
}

GrowthStats growth_stats(const GrowthSpec& growth) { return {growth.theta(), growth.sigma()}; }

RelativePayoffSpec RelativePayoffSpec::dirichlet(std::vector<double> alpha) {
    if (alpha.size() < 2) throw InvalidSpec("dirichlet needs at least 2 assets");
    double total = 0.0;
    for (double a : alpha) {
        if (!(a > 0.0)) throw InvalidSpec("dirichlet concentrations must be positive");
        total += a;
    }
    std::vector<double> mean(alpha.size());
    for (std::size_t i = 0; i < alpha.size(); ++i) mean[i] = alpha[i] / total;
    RelativePayoffSpec spec{SimplexVector(std::move(mean))};
    spec.kind_ = RelativeKind::Dirichlet;
    spec.alpha_ = std::move(alpha);
    spec.epsilon_ = spec.mean_.min_weight();
    spec.linearly_independent_ = true; // full-support density
    return spec;
}

RelativePayoffSpec RelativePayoffSpec::discrete(std::vector<SimplexVector> points,
                                                std::vector<double> probs) {
    if (points.empty()) throw InvalidSpec("discrete relative payoffs need support points");
    validate_probs(probs, points.size());
    const std::size_t n = points.front().size();
    for (const auto& p : points) {
        if (p.size() != n) throw InvalidSpec("relative payoff support points differ in dimension");
    }
    std::vector<double> mean(n, 0.0);
    for (std::size_t j = 0; j < points.size(); ++j) {
        for (std::size_t i = 0; i < n; ++i) mean[i] += probs[j] * points[j][i];
    }
    RelativePayoffSpec spec{SimplexVector(std::move(mean))};
    spec.kind_ = RelativeKind::Discrete;
    spec.points_ = std::move(points);
    spec.probs_ = std::move(probs);
    spec.epsilon_ = spec.mean_.min_weight();
    if (!(spec.epsilon_ > 0.0)) {
        throw InvalidSpec("every asset needs positive expected relative payoff");
    }
    spec.linearly_independent_ = support_rank(spec.points_) == n;
    return spec;
}

RelativePayoffSpec RelativePayoffSpec::constant(SimplexVector point) {
    RelativePayoffSpec spec{point};
    spec.kind_ = RelativeKind::Constant;
    spec.points_ = {std::move(point)};
    spec.probs_ = {1.0};
    spec.epsilon_ = spec.mean_.min_weight();
    if (!(spec.epsilon_ > 0.0)) {
        throw InvalidSpec("every asset needs positive expected relative payoff");
    }
    spec.linearly_independent_ = false; // a constant vector admits orthogonal c != 0
    return spec;
}

SimplexVector RelativePayoffSpec::draw(RngStream& rng) const {
    switch (kind_) {
        case RelativeKind::Dirichlet: {
            std::vector<double> g(alpha_.size());
            for (std::size_t i = 0; i < alpha_.size(); ++i) g[i] = rng.gamma(alpha_[i]);
            return SimplexVector(std::move(g));
        }
        case RelativeKind::Discrete:
            return points_[rng.categorical(probs_)];
        case RelativeKind::Constant:
            return points_[0];
    }
    return points_[0];
}

PayoffStep draw_step(const GrowthSpec& growth, const RelativePayoffSpec& relative, RngStream& rng) {
    // fixed draw order: growth factor first, then relative payoffs
    const double rho = growth.draw(rng);
    return PayoffStep{rho, relative.draw(rng)};
}

PayoffVector payoff_vector(const PayoffStep& step, double prev_log_total) {
    const double scale = step.growth * std::exp(prev_log_total);
    std::vector<double> values(step.relative.size());
    for (std::size_t n = 0; n < values.size(); ++n) values[n] = step.relative[n] * scale;
    return PayoffVector{std::move(values), prev_log_total + std::log(step.growth)};
}

std::vector<double> Example1Payoffs::values() const {
    std::vector<double> out(relative.size());
    const double scale = std::exp(log_scale);
    for (std::size_t n = 0; n < out.size(); ++n) out[n] = relative[n] * scale;
    return out;
}

Example1Payoffs example1_payoffs(const SimplexVector& relative, double growth, long time) {
    if (time < 1) throw DomainError("example1 payoffs start at step 1");
    if (!(growth > 1.0)) throw DomainError("example1 needs growth factor > 1");
    if (!(relative.min_weight() > 0.0)) {
        throw DomainError("example1 needs strictly positive relative payoffs");
    }
    return Example1Payoffs{relative, static_cast<double>(time) * std::log(growth)};
}

} // namespace marketgame
