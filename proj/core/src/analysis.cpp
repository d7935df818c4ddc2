#include "marketgame/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "marketgame/errors.hpp"
#include "marketgame/numeric.hpp"
#include "marketgame/rng.hpp"

namespace marketgame {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Evaluator of g(lambda) = E ln sum_n lambda^n R^n / lambda*^n and its gradient.
/// Exact finite sum for discrete support; frozen common-random-numbers sample for
/// dirichlet, so the optimization surface is deterministic.
class GObjective {
public:
    GObjective(const RelativePayoffSpec& spec, std::size_t saa_samples, std::uint64_t seed)
        : star_(spec.mean().as_vector()) {
        const std::size_t n = star_.size();
        if (spec.has_exact_expectation()) {
            for (std::size_t j = 0; j < spec.points().size(); ++j) {
                std::vector<double> row(n);
                for (std::size_t i = 0; i < n; ++i) row[i] = spec.points()[j][i] / star_[i];
                rows_.push_back(std::move(row));
                probs_.push_back(spec.probs()[j]);
            }
            exact_ = true;
        } else {
            RngStream rng(seed, 0);
            rows_.reserve(saa_samples);
            const double p = 1.0 / static_cast<double>(saa_samples);
            for (std::size_t s = 0; s < saa_samples; ++s) {
                const SimplexVector draw = spec.draw(rng);
                std::vector<double> row(n);
                for (std::size_t i = 0; i < n; ++i) row[i] = draw[i] / star_[i];
                rows_.push_back(std::move(row));
                probs_.push_back(p);
            }
            exact_ = false;
        }
    }

    bool exact() const { return exact_; }
    std::size_t samples() const { return rows_.size(); }

    double value(std::span<const double> lambda) const {
        ++evaluations_;
        double out = 0.0;
        for (std::size_t j = 0; j < rows_.size(); ++j) {
            const double s = dot(lambda, rows_[j]);
            if (!(s > 0.0)) return -kInf;
            out += probs_[j] * std::log(s);
        }
        return out;
    }

    /// Sample standard error of the estimate at lambda (0 for exact sums).
    double std_error(std::span<const double> lambda) const {
        if (exact_) return 0.0;
        RunningStats stats;
        for (std::size_t j = 0; j < rows_.size(); ++j) {
            const double s = dot(lambda, rows_[j]);
            stats.add(s > 0.0 ? std::log(s) : -kInf);
        }
        return stats.std_error();
    }

    bool gradient(std::span<const double> lambda, std::span<double> out) const {
        std::fill(out.begin(), out.end(), 0.0);
        for (std::size_t j = 0; j < rows_.size(); ++j) {
            const double s = dot(lambda, rows_[j]);
            if (!(s > 0.0)) return false;
            const double w = probs_[j] / s;
            for (std::size_t i = 0; i < out.size(); ++i) out[i] += w * rows_[j][i];
        }
        return true;
    }

    long evaluations() const { return evaluations_; }

private:
    std::vector<double> star_;
    std::vector<std::vector<double>> rows_; // R^n / lambda*^n per support point or sample
    std::vector<double> probs_;
    bool exact_ = false;
    mutable long evaluations_ = 0;
};

/// Project onto {lambda in simplex : ||lambda - star|| = a} by alternating the
/// simplex projection with a radial rescale of the deviation. Returns nullopt if
/// the iteration fails to land on the cap.
std::optional<std::vector<double>> cap_project(std::span<const double> y,
                                               std::span<const double> star, double a) {
    const std::size_t n = y.size();
    std::vector<double> cur(y.begin(), y.end());
    for (int iter = 0; iter < 100; ++iter) {
        std::vector<double> z = project_to_simplex(cur);
        double nd = l2_distance(z, star);
        if (nd < 1e-14) {
            // sitting on star: push along an arbitrary zero-sum direction
            z[0] += 1e-6;
            z[n - 1] -= 1e-6;
            nd = l2_distance(z, star);
        }
        const double scale = a / nd;
        double min_w = kInf;
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            cur[i] = star[i] + scale * (z[i] - star[i]);
            min_w = std::min(min_w, cur[i]);
            sum += cur[i];
        }
        if (min_w >= -1e-12 && std::abs(sum - 1.0) <= 1e-9) {
            for (double& w : cur) w = std::max(w, 0.0);
            double s2 = 0.0;
            for (double w : cur) s2 += w;
            for (double& w : cur) w /= s2;
            if (l2_distance(cur, star) >= a * (1.0 - 1e-9)) return cur;
        }
    }
    return std::nullopt;
}

std::vector<std::vector<double>> multistart_directions(std::span<const double> star, int count,
                                                       std::uint64_t seed) {
    const std::size_t n = star.size();
    std::vector<std::vector<double>> dirs;
    auto push_normalized = [&](std::vector<double> d) {
        double mean = 0.0;
        for (double v : d) mean += v;
        mean /= static_cast<double>(n);
        for (double& v : d) v -= mean; // zero-sum directions keep the iterate near the hyperplane
        const double norm = l2_norm(d);
        if (norm < 1e-14) return;
        for (double& v : d) v /= norm;
        dirs.push_back(std::move(d));
    };
    for (std::size_t i = 0; i < n && dirs.size() < static_cast<std::size_t>(count); ++i) {
        std::vector<double> d(n, 0.0);
        for (std::size_t j = 0; j < n; ++j) d[j] = (i == j ? 1.0 : 0.0) - star[j];
        push_normalized(std::move(d));
    }
    for (std::size_t i = 0; i < n && dirs.size() < static_cast<std::size_t>(count); ++i) {
        for (std::size_t j = i + 1; j < n && dirs.size() < static_cast<std::size_t>(count); ++j) {
            std::vector<double> d(n, 0.0);
            for (std::size_t k = 0; k < n; ++k) {
                d[k] = ((k == i || k == j) ? 0.5 : 0.0) - star[k];
            }
            push_normalized(std::move(d));
        }
    }
    RngStream rng(seed, 1);
    while (dirs.size() < static_cast<std::size_t>(count)) {
        std::vector<double> d(n);
        for (double& v : d) v = rng.normal();
        push_normalized(std::move(d));
    }
    return dirs;
}

} // namespace

FofA compute_f(const RelativePayoffSpec& relative, double separation,
               const ComputeFOptions& options) {
    if (!(separation > 0.0)) throw DomainError("separation radius must be positive");
    if (!relative.linearly_independent()) {
        throw LinearDependence(
            "relative payoffs have linearly dependent components; f(a) and the "
            "separation bound are not defined for this spec");
    }
    const std::vector<double>& star = relative.mean().as_vector();
    const std::size_t n = star.size();

    FofA out;
    out.separation = separation;

    // the farthest simplex point from an interior star is one of the vertices
    double max_dist = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> vertex(n, 0.0);
        vertex[i] = 1.0;
        max_dist = std::max(max_dist, l2_distance(vertex, star));
    }
    if (separation > max_dist + 1e-12) {
        out.value = -1.0; // sentinel: empty feasible set
        out.feasible = false;
        return out;
    }

    GObjective objective(relative, options.saa_samples, options.seed);
    out.saa_samples = objective.exact() ? 0 : objective.samples();

    double best = -kInf;
    std::optional<std::vector<double>> best_point;

    if (n == 2) {
        // the cap is at most two points: star +- (a/sqrt(2)) (1, -1)
        const double d = separation / std::sqrt(2.0);
        for (const double sign : {+1.0, -1.0}) {
            std::vector<double> cand{star[0] + sign * d, star[1] - sign * d};
            if (cand[0] < -1e-15 || cand[1] < -1e-15) continue;
            cand[0] = std::max(cand[0], 0.0);
            cand[1] = std::max(cand[1], 0.0);
            const double v = objective.value(cand);
            if (v > best || !best_point) {
                best = v;
                best_point = cand;
            }
        }
        out.multistarts = 2;
    } else {
        const auto dirs = multistart_directions(star, options.multistarts, options.seed);
        out.multistarts = static_cast<int>(dirs.size());
        std::vector<double> grad(n);
        for (const auto& dir : dirs) {
            std::vector<double> y(n);
            for (std::size_t i = 0; i < n; ++i) y[i] = star[i] + separation * dir[i];
            auto start = cap_project(y, star, separation);
            if (!start) continue;
            std::vector<double> cur = *start;
            double cur_val = objective.value(cur);
            double step = 0.1;
            for (int it = 0; it < options.max_iterations && step > 1e-12; ++it) {
                if (!std::isfinite(cur_val)) break; // log blew up; dead start
                if (!objective.gradient(cur, grad)) break;
                for (std::size_t i = 0; i < n; ++i) y[i] = cur[i] + step * grad[i];
                auto cand = cap_project(y, star, separation);
                if (!cand) {
                    step *= 0.5;
                    continue;
                }
                const double cand_val = objective.value(*cand);
                if (cand_val > cur_val + options.tolerance * std::max(1.0, std::abs(cur_val))) {
                    cur = std::move(*cand);
                    cur_val = cand_val;
                    step *= 1.5;
                } else {
                    step *= 0.5;
                }
            }
            if (cur_val > best || !best_point) {
                best = cur_val;
                best_point = std::move(cur);
            }
        }
    }

    if (!best_point) {
        throw NumericalFailure("no feasible point found on the separation sphere");
    }
    out.feasible = true;
    out.value = best;
    out.argmax = SimplexVector(*best_point);
    out.saa_std_error = objective.std_error(*best_point);
    out.evaluations = objective.evaluations();
    return out;
}

double theorem2_rhs(const FofA& f, double theta) {
    if (!f.feasible) throw DomainError("theorem2_rhs needs a feasible separation radius");
    if (!(theta > 0.0)) throw DomainError("theorem2_rhs needs theta > 0");
    const double abs_f = std::abs(f.value);
    return 1.0 - std::min(abs_f, theta) / theta;
}

double lower_tau(double level, double total_initial_wealth, double theta) {
    if (!(theta > 0.0)) throw DomainError("lower_tau needs theta > 0");
    if (level < total_initial_wealth) {
        throw DomainError("lower_tau needs level >= initial total wealth");
    }
    return (std::log(level) - std::log(total_initial_wealth)) / theta;
}

double upper_tau(double level, double investor_initial_wealth, double theta, double sigma,
                 double delta, double epsilon) {
    if (!(theta > 0.0)) throw DomainError("upper_tau needs theta > 0");
    if (!(level > investor_initial_wealth)) {
        throw DomainError("upper_tau needs level > the investor's initial wealth");
    }
    const double rhs =
        std::log(level) + theta - std::log(investor_initial_wealth * delta * epsilon);
    const double root = (sigma + std::sqrt(sigma * sigma + theta * rhs)) / theta;
    return root * root;
}

TheoremBounds make_theorem_bounds(const GameConfig& config, const std::optional<FofA>& f) {
    TheoremBounds b;
    b.theta = config.growth().theta();
    b.sigma = config.growth().sigma();
    b.epsilon = config.relative().epsilon();
    b.delta = b.epsilon * b.epsilon / 256.0;
    b.total_initial_wealth = config.total_initial_wealth();
    b.investor_initial_wealth = config.initial_wealth()[0];
    b.theorem2_rhs_value = f && f->feasible ? theorem2_rhs(*f, b.theta) : 1.0;
    return b;
}

std::optional<double> opponent_separation(const GameConfig& config, std::size_t investor) {
    const StrategySpec& s = config.strategies().at(investor);
    if (s.kind() == StrategyKind::Constant || s.kind() == StrategyKind::Separated) {
        return l2_distance(s.weights()->weights(), config.star().weights());
    }
    return std::nullopt;
}

std::vector<DriftState> harvest_drift_states(const GameConfig& config, std::size_t count,
                                             std::uint64_t seed, long max_time,
                                             bool vary_initial_share) {
    std::vector<DriftState> states;
    states.reserve(count);
    const bool two_investors = config.num_investors() == 2;
    // initial-share spread keeps the sample away from the absorbing corner
    const std::vector<double> share_grid = {0.05, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    std::uint64_t path_index = 0;
    while (states.size() < count) {
        const GameConfig* game = &config;
        std::optional<GameConfig> rescaled;
        if (two_investors && vary_initial_share) {
            const double r0 = share_grid[path_index % share_grid.size()];
            const double w0 = config.total_initial_wealth();
            rescaled.emplace(std::vector<double>{r0 * w0, (1.0 - r0) * w0}, config.strategies(),
                             config.growth(), config.relative());
            game = &rescaled.value();
        }
        GameRunner runner(*game, RngStream(seed, path_index));
        for (long t = 1; t <= max_time && states.size() < count; ++t) {
            const double share_before = runner.state().shares.share(0);
            const RelativeWealth shares_before = runner.state().shares;
            runner.advance();
            const Matrix& lambda = runner.last_proportions();
            const RepresentativeReduction red =
                representative_reduction(shares_before, lambda, 0);
            if (red.degenerate) continue;
            DriftState s;
            s.share = share_before;
            s.lambda.assign(lambda.row(0).begin(), lambda.row(0).end());
            s.opponent = red.proportions;
            states.push_back(std::move(s));
        }
        ++path_index;
    }
    return states;
}

namespace {

double lemma1_rhs(std::span<const double> x, std::span<const double> y) {
    const double y_l1 = l1_norm(y);
    double dist_sq = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - y[i] / y_l1;
        dist_sq += d * d;
    }
    return 0.25 * dist_sq - std::log(y_l1);
}

} // namespace

std::vector<DriftEstimate> drift_test(const RelativePayoffSpec& relative,
                                      const std::vector<DriftState>& states,
                                      std::size_t inner_samples, std::uint64_t seed) {
    std::vector<DriftEstimate> out;
    out.reserve(states.size());
    for (std::size_t idx = 0; idx < states.size(); ++idx) {
        const DriftState& st = states[idx];
        const std::size_t n = st.lambda.size();
        std::vector<double> beta(n);
        for (std::size_t i = 0; i < n; ++i) {
            beta[i] = st.share * st.lambda[i] + (1.0 - st.share) * st.opponent[i];
        }
        RngStream rng(seed, idx);
        RunningStats own, opp;
        for (std::size_t k = 0; k < inner_samples; ++k) {
            const SimplexVector r = relative.draw(rng);
            double s_own = 0.0, s_opp = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (beta[i] > 0.0) {
                    s_own += st.lambda[i] * r[i] / beta[i];
                    s_opp += st.opponent[i] * r[i] / beta[i];
                }
            }
            own.add(s_own > 0.0 ? std::log(s_own) : -kInf);
            opp.add(s_opp > 0.0 ? std::log(s_opp) : -kInf);
        }
        DriftEstimate e;
        e.state = st;
        e.drift = own.mean;
        e.drift_se = own.std_error();
        e.opponent_drift = opp.mean;
        e.opponent_se = opp.std_error();
        e.lemma1_bound = lemma1_rhs(st.lambda, beta);
        out.push_back(std::move(e));
    }
    return out;
}

double exact_drift(const RelativePayoffSpec& relative, const DriftState& state) {
    if (!relative.has_exact_expectation()) {
        throw DomainError("exact drift needs a finite-support payoff spec");
    }
    const std::size_t n = state.lambda.size();
    std::vector<double> beta(n);
    for (std::size_t i = 0; i < n; ++i) {
        beta[i] = state.share * state.lambda[i] + (1.0 - state.share) * state.opponent[i];
    }
    double drift = 0.0;
    for (std::size_t j = 0; j < relative.points().size(); ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (beta[i] > 0.0) s += state.lambda[i] * relative.points()[j][i] / beta[i];
        }
        drift += relative.probs()[j] * (s > 0.0 ? std::log(s) : -kInf);
    }
    return drift;
}

std::vector<ModifiedShareStep> modified_share_path(const SharePathInputs& inputs,
                                                   double epsilon) {
    if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
    const double delta = epsilon * epsilon / 256.0;
    const std::size_t steps = inputs.payoffs.size();
    if (inputs.lambda.size() != steps || inputs.opponent.size() != steps) {
        throw InvalidSpec("modified share path needs equally long input sequences");
    }
    std::vector<ModifiedShareStep> out;
    out.reserve(steps);
    double share = inputs.initial_share;     // r_t
    double modified = inputs.initial_share;  // r'_t
    for (std::size_t t = 0; t < steps; ++t) {
        const SimplexVector& lam = inputs.lambda[t];
        const SimplexVector& opp = inputs.opponent[t];
        const SimplexVector& pay = inputs.payoffs[t];
        const std::size_t n = lam.size();

        const bool fired = opp.min_weight() <= epsilon / 2.0 && modified <= 0.5;
        double new_share = 0.0, new_modified = 0.0, beta_l1 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double beta = lam[i] * share + opp[i] * (1.0 - share);
            if (beta > 0.0) new_share += lam[i] * share / beta * pay[i];
            const double adjusted = opp[i] + (fired ? delta * lam[i] : 0.0);
            const double beta_mod = lam[i] * modified + adjusted * (1.0 - modified);
            beta_l1 += beta_mod;
            if (beta_mod > 0.0) new_modified += lam[i] * modified / beta_mod * pay[i];
        }

        const double prev_modified = modified;
        share = new_share;
        modified = new_modified;

        if (modified > share * (1.0 + 1e-12) + 1e-15) {
            throw NumericalFailure("modified share exceeded the original share");
        }
        if (modified > prev_modified / (delta * epsilon) * (1.0 + 1e-12)) {
            throw NumericalFailure("modified share violated the one-step cap");
        }
        if (fired) {
            const double expected_l1 = 1.0 + delta * (1.0 - prev_modified);
            if (std::abs(beta_l1 - expected_l1) > 1e-12) {
                throw NumericalFailure("adjusted proportions have unexpected total mass");
            }
        }
        out.push_back(ModifiedShareStep{share, modified, fired, beta_l1});
    }
    return out;
}

Lemma1Sides lemma1_check(const SimplexVector& x, std::span<const double> y) {
    if (x.size() != y.size()) throw InvalidSpec("lemma1 vectors differ in dimension");
    for (double v : y) {
        if (!(v > 0.0)) throw DomainError("lemma1 needs strictly positive y");
    }
    if (!(x.min_weight() > 0.0)) throw DomainError("lemma1 needs strictly positive x");
    double lhs = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        lhs += x[i] * (std::log(x[i]) - std::log(y[i]));
    }
    return Lemma1Sides{lhs, lemma1_rhs(x.weights(), y)};
}

Lemma2Result lemma2_check(const GrowthSpec& growth, const ThresholdStoppingRule& rule,
                          std::size_t paths, std::uint64_t seed) {
    Lemma2Result out;
    out.paths = paths;
    const double mu = growth.theta();
    const double sd = growth.sigma();

    RunningStats stopped, tau_stats;
    for (std::size_t p = 0; p < paths; ++p) {
        RngStream rng(seed, p);
        bool done = false;
        for (long t = 1; t <= rule.max_time; ++t) {
            const double x = std::log(growth.draw(rng));
            if (x >= rule.threshold) {
                stopped.add(x);
                tau_stats.add(static_cast<double>(t));
                done = true;
                break;
            }
        }
        if (!done) ++out.censored;
    }
    out.mc_stopped_mean = stopped.mean;
    out.mc_stopped_se = stopped.std_error();
    out.mc_tau_mean = tau_stats.mean;
    out.mc_bound = mu + 2.0 * sd * std::sqrt(std::max(tau_stats.mean, 0.0));

    if (growth.kind() != GrowthKind::Lognormal) {
        double hit_prob = 0.0, hit_mean = 0.0;
        for (std::size_t j = 0; j < growth.values().size(); ++j) {
            const double x = std::log(growth.values()[j]);
            if (x >= rule.threshold) {
                hit_prob += growth.probs()[j];
                hit_mean += growth.probs()[j] * x;
            }
        }
        if (!(hit_prob > 0.0)) {
            throw DomainError("stopping threshold is above the whole support; tau is infinite");
        }
        out.has_exact = true;
        out.exact_stopped = hit_mean / hit_prob;
        out.exact_tau = 1.0 / hit_prob;
        out.exact_bound = mu + 2.0 * sd * std::sqrt(out.exact_tau);
    }
    return out;
}

MartingaleReport survival_report(const GameConfig& config, const SurvivalOptions& options) {
    if (config.strategies().front().kind() != StrategyKind::LambdaStar) {
        throw InvalidSpec("survival report needs investor 1 to play lambda_star");
    }
    if (!config.relative().has_exact_expectation()) {
        throw InvalidSpec("survival report needs a finite-support payoff spec for the "
                          "exact compensator");
    }
    MartingaleReport report;
    report.c_grid = options.c_grid;
    report.separation = opponent_separation(config, 1);
    report.paths.resize(options.paths);
    report.compensator_mean.assign(static_cast<std::size_t>(options.steps), 0.0);
    std::vector<RunningStats> drift_stats(static_cast<std::size_t>(options.steps));

    for (std::size_t p = 0; p < options.paths; ++p) {
        GameRunner runner(config, RngStream(options.seed, p));
        SurvivalPathStats stats;
        stats.eta.assign(options.c_grid.size(), 0);
        double share = runner.state().shares.share(0);
        stats.min_share = share;
        for (std::size_t c = 0; c < options.c_grid.size(); ++c) {
            if (share < options.c_grid[c]) ++stats.eta[c];
        }
        double compensator = 0.0;
        for (long t = 1; t <= options.steps; ++t) {
            const double prev_share = share;
            const RelativeWealth prev_shares = runner.state().shares;
            runner.advance();
            const Matrix& lambda = runner.last_proportions();
            const RepresentativeReduction red = representative_reduction(prev_shares, lambda, 0);
            DriftState st;
            st.share = prev_share;
            st.lambda.assign(lambda.row(0).begin(), lambda.row(0).end());
            st.opponent = red.degenerate ? std::vector<double>(config.num_assets(), 0.0)
                                         : red.proportions;
            double increment = 0.0;
            if (!red.degenerate) {
                increment = exact_drift(config.relative(), st);
            }
            if (increment < -1e-12) stats.compensator_monotone = false;
            compensator += increment;
            // summed directly over the other investors; 1 - r would lose the tail
            const double rest = red.share;
            stats.sum_sq_rest_share += rest * rest;

            share = runner.state().shares.share(0);
            stats.min_share = std::min(stats.min_share, share);
            for (std::size_t c = 0; c < options.c_grid.size(); ++c) {
                if (share < options.c_grid[c]) ++stats.eta[c];
            }
            report.compensator_mean[static_cast<std::size_t>(t - 1)] += compensator;
            drift_stats[static_cast<std::size_t>(t - 1)].add(increment);
        }
        stats.compensator_final = compensator;
        report.paths[p] = std::move(stats);
    }
    const double inv = 1.0 / static_cast<double>(options.paths);
    for (double& v : report.compensator_mean) v *= inv;
    report.drift_by_time.reserve(drift_stats.size());
    report.drift_se_by_time.reserve(drift_stats.size());
    for (const RunningStats& s : drift_stats) {
        report.drift_by_time.push_back(s.mean);
        report.drift_se_by_time.push_back(s.std_error());
    }
    return report;
}

} // namespace marketgame
