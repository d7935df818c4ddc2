#include <doctest.h>

#include <cmath>
#include <vector>

#include "marketgame/analysis.hpp"
#include "marketgame/errors.hpp"
#include "marketgame/numeric.hpp"

using namespace marketgame;

namespace {

RelativePayoffSpec corner_two_point() {
    return RelativePayoffSpec::discrete(
        {SimplexVector({1.0, 0.0}), SimplexVector({0.0, 1.0})}, {0.5, 0.5});
}

RelativePayoffSpec three_asset_spec() {
    return RelativePayoffSpec::discrete({SimplexVector({0.7, 0.2, 0.1}),
                                         SimplexVector({0.1, 0.6, 0.3}),
                                         SimplexVector({0.2, 0.2, 0.6})},
                                        {0.4, 0.35, 0.25});
}

// dense sweep of the cap circle in the zero-sum plane, N = 3
double grid_oracle_f(const RelativePayoffSpec& spec, double a, int grid) {
    const SimplexVector& star = spec.mean();
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const double inv_sqrt6 = 1.0 / std::sqrt(6.0);
    const double basis1[3] = {inv_sqrt2, -inv_sqrt2, 0.0};
    const double basis2[3] = {inv_sqrt6, inv_sqrt6, -2.0 * inv_sqrt6};
    double best = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < grid; ++k) {
        const double phi = 2.0 * M_PI * k / grid;
        double lambda[3];
        bool ok = true;
        for (int i = 0; i < 3; ++i) {
            lambda[i] = star[i] + a * (std::cos(phi) * basis1[i] + std::sin(phi) * basis2[i]);
            if (lambda[i] < 0.0) ok = false;
        }
        if (!ok) continue;
        double value = 0.0;
        for (std::size_t j = 0; j < spec.points().size(); ++j) {
            double s = 0.0;
            for (int i = 0; i < 3; ++i) s += lambda[i] * spec.points()[j][i] / star[i];
            value += spec.probs()[j] * std::log(s);
        }
        best = std::max(best, value);
    }
    return best;
}

} // namespace

TEST_CASE("f(a) closed form for the corner two-point spec") {
    const double a = 0.1;
    const FofA f = compute_f(corner_two_point(), a);
    CHECK(f.feasible);
    // optimum at lambda* +- (a/sqrt 2)(1,-1): 0.5 ln(1 - 2 a^2)
    CHECK(f.value == doctest::Approx(0.5 * std::log(1.0 - 2.0 * a * a)).epsilon(1e-12));
    CHECK(f.saa_std_error == 0.0);
    REQUIRE(f.argmax.has_value());
    CHECK(l2_distance(f.argmax->weights(), std::vector<double>{0.5, 0.5}) ==
          doctest::Approx(a).epsilon(1e-9));
}

TEST_CASE("f(a) sentinel when the separation exceeds the simplex diameter") {
    const FofA f = compute_f(corner_two_point(), 1.5);
    CHECK_FALSE(f.feasible);
    CHECK(f.value == -1.0);
    CHECK_THROWS_AS(theorem2_rhs(f, 0.18), DomainError);
}

TEST_CASE("f(a) refuses linearly dependent supports") {
    const RelativePayoffSpec constant = RelativePayoffSpec::constant(SimplexVector({0.6, 0.4}));
    CHECK_THROWS_AS(compute_f(constant, 0.1), LinearDependence);

    const RelativePayoffSpec flat = RelativePayoffSpec::discrete(
        {SimplexVector({0.6, 0.2, 0.2}), SimplexVector({0.2, 0.4, 0.4})}, {0.5, 0.5});
    CHECK_THROWS_AS(compute_f(flat, 0.1), LinearDependence);
}

TEST_CASE("f is negative and nonincreasing in the separation") {
    const RelativePayoffSpec spec = RelativePayoffSpec::discrete(
        {SimplexVector({0.9, 0.1}), SimplexVector({0.1, 0.9})}, {0.5, 0.5});
    double prev = 0.0;
    for (const double a : {0.05, 0.1, 0.2, 0.4, 0.6}) {
        const FofA f = compute_f(spec, a);
        REQUIRE(f.feasible);
        CHECK(f.value < 0.0);
        CHECK(f.value <= prev + 1e-12);
        prev = f.value;
    }
}

TEST_CASE("three-asset optimizer matches a dense grid oracle") {
    const RelativePayoffSpec spec = three_asset_spec();
    for (const double a : {0.1, 0.25, 0.45}) {
        const FofA f = compute_f(spec, a);
        REQUIRE(f.feasible);
        const double oracle = grid_oracle_f(spec, a, 200000);
        CHECK(f.value == doctest::Approx(oracle).epsilon(1e-6));
        CHECK(f.value >= oracle - 1e-9); // optimizer must not undershoot the sweep
    }
}

TEST_CASE("dirichlet f(a) is stable under doubling the sample") {
    const RelativePayoffSpec spec = RelativePayoffSpec::dirichlet({2.0, 3.0, 4.0});
    ComputeFOptions small;
    small.saa_samples = 50000;
    ComputeFOptions large;
    large.saa_samples = 100000;
    const FofA f1 = compute_f(spec, 0.15, small);
    const FofA f2 = compute_f(spec, 0.15, large);
    REQUIRE(f1.feasible);
    REQUIRE(f2.feasible);
    CHECK(f1.value < 0.0);
    CHECK(f1.saa_std_error > 0.0);
    CHECK(std::abs(f1.value - f2.value) <= 3.0 * std::max(f1.saa_std_error, f2.saa_std_error));
}

TEST_CASE("theorem2_rhs arithmetic") {
    FofA f;
    f.feasible = true;
    f.separation = 0.1;

    f.value = -0.0101;
    CHECK(theorem2_rhs(f, std::log(1.2)) == doctest::Approx(0.9446).epsilon(1e-3));

    f.value = -5.0; // |f| clamps at theta
    CHECK(theorem2_rhs(f, std::log(1.2)) == 0.0);

    f.value = -1e-12;
    CHECK(theorem2_rhs(f, std::log(1.2)) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("crossing-time sandwich bounds") {
    SUBCASE("frozen regression values") {
        CHECK(lower_tau(1e6, 2.0, 0.18232) == doctest::Approx(71.97434937145857).epsilon(1e-12));
        const double up = upper_tau(1e6, 1.0, 0.18232, 0.0835, 0.25 / 256.0, 0.5);
        CHECK(up == doctest::Approx(128.999570959942).epsilon(1e-10));
    }
    SUBCASE("bisection oracle for the quadratic") {
        const double theta = 0.18232, sigma = 0.0835, delta = 0.25 / 256.0, eps = 0.5;
        const double rhs = std::log(1e6) + theta - std::log(1.0 * delta * eps);
        double lo = 0.0, hi = 1e7;
        for (int i = 0; i < 200; ++i) {
            const double mid = 0.5 * (lo + hi);
            if (theta * mid - 2.0 * sigma * std::sqrt(mid) < rhs) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        CHECK(upper_tau(1e6, 1.0, theta, sigma, delta, eps) ==
              doctest::Approx(0.5 * (lo + hi)).epsilon(1e-9));
    }
    SUBCASE("degenerate sigma = 0 collapses to a linear bound") {
        const double theta = 0.2, delta = 0.001, eps = 0.5;
        const double rhs = std::log(100.0) + theta - std::log(1.0 * delta * eps);
        CHECK(upper_tau(100.0, 1.0, theta, 0.0, delta, eps) ==
              doctest::Approx(rhs / theta).epsilon(1e-12));
    }
    SUBCASE("boundary and domain errors") {
        CHECK(lower_tau(2.0, 2.0, 0.5) == 0.0);
        CHECK_THROWS_AS(lower_tau(1.0, 2.0, 0.5), DomainError);
        CHECK_THROWS_AS(upper_tau(1.0, 1.0, 0.5, 0.1, 0.001, 0.5), DomainError);
    }
}

TEST_CASE("conditional drift at a pinned state") {
    const RelativePayoffSpec spec = corner_two_point();
    DriftState state;
    state.share = 0.5;
    state.lambda = {0.5, 0.5};
    state.opponent = {0.8, 0.2};

    SUBCASE("exact two-point expectation and the Gibbs floor") {
        const double drift = exact_drift(spec, state);
        CHECK(drift == doctest::Approx(0.04715533973562064).epsilon(1e-14));
        const auto estimates = drift_test(spec, {state}, 20000, 444);
        REQUIRE(estimates.size() == 1);
        CHECK(estimates[0].lemma1_bound == doctest::Approx(0.01125).epsilon(1e-12));
        CHECK(drift >= estimates[0].lemma1_bound);
        CHECK(std::abs(estimates[0].drift - drift) <= 4.0 * estimates[0].drift_se);
        // the opponent side of the same draws drifts down
        CHECK(estimates[0].opponent_drift <= 3.0 * estimates[0].opponent_se);
    }
    SUBCASE("matching opponent freezes the share") {
        state.opponent = {0.5, 0.5};
        const auto estimates = drift_test(spec, {state}, 1000, 444);
        CHECK(estimates[0].drift == 0.0);
        CHECK(estimates[0].drift_se == 0.0);
        CHECK(estimates[0].lemma1_bound == 0.0);
    }
    SUBCASE("absorbing limit") {
        state.share = 1.0 - 1e-9;
        const double drift = exact_drift(spec, state);
        CHECK(std::abs(drift) < 1e-8);
    }
}

TEST_CASE("harvested states cover moderate shares") {
    const GameConfig config({1.0, 1.0},
                            {StrategySpec::lambda_star(),
                             StrategySpec::constant(SimplexVector({0.8, 0.2}))},
                            GrowthSpec::discrete({1.1, 1.3}, {0.5, 0.5}),
                            RelativePayoffSpec::discrete(
                                {SimplexVector({0.9, 0.1}), SimplexVector({0.1, 0.9})},
                                {0.5, 0.5}));
    const auto states = harvest_drift_states(config, 200, 10);
    REQUIRE(states.size() == 200);
    for (const DriftState& s : states) {
        CHECK(s.share > 0.0);
        CHECK(s.share < 1.0);
        CHECK(s.lambda.size() == 2);
        CHECK(s.opponent.size() == 2);
        CHECK(s.opponent[0] == doctest::Approx(0.8).epsilon(1e-12));
    }
}

TEST_CASE("lemma 1 sides") {
    const Lemma1Sides equal = lemma1_check(SimplexVector({0.5, 0.5}),
                                           std::vector<double>{0.5, 0.5});
    CHECK(equal.lhs == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(equal.rhs == doctest::Approx(0.0).epsilon(1e-15));

    const Lemma1Sides kl = lemma1_check(SimplexVector({0.5, 0.5}),
                                        std::vector<double>{0.25, 0.75});
    CHECK(kl.lhs == doctest::Approx(0.14384103622589042).epsilon(1e-13));
    CHECK(kl.rhs == doctest::Approx(0.03125).epsilon(1e-13));
    CHECK(kl.lhs >= kl.rhs);

    // pure scaling: x = y/|y| makes both sides -ln|y|
    const Lemma1Sides scaled = lemma1_check(SimplexVector({0.5, 0.5}),
                                            std::vector<double>{1.0, 1.0});
    CHECK(scaled.lhs == doctest::Approx(-std::log(2.0)).epsilon(1e-14));
    CHECK(scaled.rhs == doctest::Approx(-std::log(2.0)).epsilon(1e-14));
}

TEST_CASE("lemma 1 property sweep") {
    RngStream rng(2718, 0);
    for (int trial = 0; trial < 10000; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(rng.uniform() * 4);
        std::vector<double> x(n), y(n);
        for (double& v : x) v = 0.01 + rng.uniform();
        for (double& v : y) v = std::exp(rng.normal(0.0, 1.0));
        const Lemma1Sides sides = lemma1_check(SimplexVector(x), y);
        CHECK(sides.lhs - sides.rhs >= -1e-12);
    }
}

TEST_CASE("lemma 2 stopped-variable bound") {
    SUBCASE("constant stopping time") {
        const GrowthSpec growth = GrowthSpec::discrete({1.05, 1.3}, {0.5, 0.5});
        // threshold below the support: stop at t = 1 always
        const Lemma2Result r = lemma2_check(growth, ThresholdStoppingRule{0.0, 1000}, 2000, 8);
        CHECK(r.has_exact);
        CHECK(r.exact_tau == 1.0);
        CHECK(r.exact_stopped == doctest::Approx(growth.theta()).epsilon(1e-12));
        CHECK(r.mc_tau_mean == 1.0);
        CHECK(r.exact_stopped <= r.exact_bound);
    }
    SUBCASE("degenerate growth") {
        const GrowthSpec growth = GrowthSpec::constant(1.2);
        const Lemma2Result r = lemma2_check(growth, ThresholdStoppingRule{0.0, 1000}, 500, 8);
        CHECK(r.mc_stopped_mean == doctest::Approx(growth.theta()).epsilon(1e-12));
        CHECK(r.mc_bound == doctest::Approx(growth.theta()).epsilon(1e-12));
    }
    SUBCASE("geometric stopping rule") {
        const GrowthSpec growth = GrowthSpec::discrete({1.05, 1.3}, {0.5, 0.5});
        const double mid = 0.15; // between ln 1.05 and ln 1.3
        const Lemma2Result r = lemma2_check(growth, ThresholdStoppingRule{mid, 10000}, 20000, 8);
        CHECK(r.has_exact);
        CHECK(r.exact_stopped == doctest::Approx(std::log(1.3)).epsilon(1e-12));
        CHECK(r.exact_tau == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(std::abs(r.mc_stopped_mean - r.exact_stopped) <= 3.0 * r.mc_stopped_se + 1e-9);
        CHECK(r.exact_stopped < r.exact_bound); // strict inequality here
        CHECK(r.censored == 0);
    }
    SUBCASE("threshold above the support") {
        const GrowthSpec growth = GrowthSpec::constant(1.2);
        CHECK_THROWS_AS(lemma2_check(growth, ThresholdStoppingRule{1.0, 100}, 100, 8),
                        DomainError);
    }
}

TEST_CASE("modified share sequence") {
    const double eps = 0.5;
    SUBCASE("never fires when the opponent stays diversified") {
        SharePathInputs inputs;
        inputs.initial_share = 0.4;
        for (int t = 0; t < 50; ++t) {
            inputs.lambda.emplace_back(std::vector<double>{0.6, 0.4});
            inputs.opponent.emplace_back(std::vector<double>{0.5, 0.5}); // min > eps/2
            inputs.payoffs.emplace_back(std::vector<double>{t % 2 ? 0.7 : 0.3,
                                                            t % 2 ? 0.3 : 0.7});
        }
        const auto steps = modified_share_path(inputs, eps);
        for (const auto& s : steps) {
            CHECK_FALSE(s.fired);
            CHECK(s.modified_share == s.original_share);
            CHECK(s.beta_l1 == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
    SUBCASE("large share keeps the trigger off") {
        SharePathInputs inputs;
        inputs.initial_share = 0.8; // r' > 1/2
        inputs.lambda.emplace_back(std::vector<double>{0.6, 0.4});
        inputs.opponent.emplace_back(std::vector<double>{0.9, 0.1}); // min <= eps/2
        inputs.payoffs.emplace_back(std::vector<double>{0.6, 0.4});
        const auto steps = modified_share_path(inputs, eps);
        CHECK_FALSE(steps[0].fired);
    }
    SUBCASE("fired step carries the adjusted mass") {
        SharePathInputs inputs;
        inputs.initial_share = 0.3;
        inputs.lambda.emplace_back(std::vector<double>{0.6, 0.4});
        inputs.opponent.emplace_back(std::vector<double>{0.9, 0.1});
        inputs.payoffs.emplace_back(std::vector<double>{0.6, 0.4});
        const auto steps = modified_share_path(inputs, eps);
        REQUIRE(steps.size() == 1);
        CHECK(steps[0].fired);
        const double delta = eps * eps / 256.0;
        CHECK(steps[0].beta_l1 == doctest::Approx(1.0 + delta * 0.7).epsilon(1e-12));
        CHECK(std::log(steps[0].beta_l1) <= delta);
        CHECK(steps[0].modified_share <= steps[0].original_share + 1e-12);
    }
}

TEST_CASE("the adjusted-opponent share keeps a nonnegative drift") {
    // states of the modified recursion: opponent nudged by delta lambda carries
    // total mass 1 + delta (1 - r'), and the Gibbs floor stays nonnegative
    const RelativePayoffSpec spec = corner_two_point();
    const double eps = spec.epsilon();
    const double delta = eps * eps / 256.0;
    std::vector<DriftState> states;
    for (const double share : {0.05, 0.2, 0.45}) {
        DriftState s;
        s.share = share;
        s.lambda = {0.5, 0.5};
        s.opponent = {0.9 + delta * 0.5, 0.1 + delta * 0.5};
        states.push_back(std::move(s));
    }
    const auto estimates = drift_test(spec, states, 20000, 888);
    for (const DriftEstimate& e : estimates) {
        CHECK(e.lemma1_bound >= -1e-12); // this is what the delta tuning buys
        CHECK(e.drift >= e.lemma1_bound - 3.0 * e.drift_se);
        CHECK(e.drift >= -3.0 * e.drift_se);
    }
}

TEST_CASE("survival report on the separated game") {
    const GameConfig config({1.0, 1.0},
                            {StrategySpec::lambda_star(),
                             StrategySpec::constant(SimplexVector({0.8, 0.2}))},
                            GrowthSpec::discrete({1.1, 1.3}, {0.5, 0.5}),
                            RelativePayoffSpec::discrete(
                                {SimplexVector({0.9, 0.1}), SimplexVector({0.1, 0.9})},
                                {0.5, 0.5}));
    SurvivalOptions options;
    options.paths = 50;
    options.steps = 400;
    options.seed = 97;
    const MartingaleReport report = survival_report(config, options);
    REQUIRE(report.paths.size() == 50);
    REQUIRE(report.separation.has_value());
    const double a = *report.separation;
    CHECK(a == doctest::Approx(0.3 * std::sqrt(2.0)).epsilon(1e-12));
    for (const auto& p : report.paths) {
        CHECK(p.min_share > 0.0);
        CHECK(p.compensator_monotone);
        CHECK(p.sum_sq_rest_share <= 4.0 * p.compensator_final / (a * a) * (1.0 + 1e-9) + 1e-12);
    }
    // compensator sample means are nondecreasing in t
    for (std::size_t t = 1; t < report.compensator_mean.size(); ++t) {
        CHECK(report.compensator_mean[t] >= report.compensator_mean[t - 1] - 1e-12);
    }
}

TEST_CASE("survival report with a matching opponent is inert") {
    const GameConfig config({1.0, 1.0},
                            {StrategySpec::lambda_star(), StrategySpec::lambda_star()},
                            GrowthSpec::discrete({1.1, 1.3}, {0.5, 0.5}),
                            RelativePayoffSpec::discrete(
                                {SimplexVector({0.9, 0.1}), SimplexVector({0.1, 0.9})},
                                {0.5, 0.5}));
    SurvivalOptions options;
    options.paths = 10;
    options.steps = 100;
    options.seed = 4;
    options.c_grid = {0.25, 0.5};
    const MartingaleReport report = survival_report(config, options);
    for (const auto& p : report.paths) {
        CHECK(p.min_share == 0.5);
        CHECK(p.compensator_final == doctest::Approx(0.0).epsilon(1e-14));
        CHECK(p.eta[0] == 0); // r_t never below 0.25
        CHECK(p.eta[1] == 0); // nor below 0.5
    }
}
