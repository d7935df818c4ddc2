#include <doctest.h>

#include <cmath>
#include <vector>

#include "marketgame/errors.hpp"
#include "marketgame/numeric.hpp"
#include "marketgame/payoffs.hpp"

using namespace marketgame;

TEST_CASE("draw_step degenerate distributions") {
    const GrowthSpec growth = GrowthSpec::constant(1.2);
    const RelativePayoffSpec rel = RelativePayoffSpec::constant(SimplexVector({0.6, 0.4}));
    RngStream rng(1, 0);
    for (int i = 0; i < 10; ++i) {
        const PayoffStep step = draw_step(growth, rel, rng);
        CHECK(step.growth == 1.2);
        CHECK(step.relative[0] == 0.6);
        CHECK(step.relative[1] == 0.4);
    }
}

TEST_CASE("two-point relative draws have the right frequency") {
    const GrowthSpec growth = GrowthSpec::discrete({1.1}, {1.0});
    const RelativePayoffSpec rel = RelativePayoffSpec::discrete(
        {SimplexVector({1.0, 0.0}), SimplexVector({0.0, 1.0})}, {0.5, 0.5});
    RngStream rng(42, 0);
    int count_first = 0;
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) {
        const PayoffStep step = draw_step(growth, rel, rng);
        CHECK(step.growth == 1.1);
        if (step.relative[0] == 1.0) ++count_first;
    }
    const double freq = static_cast<double>(count_first) / draws;
    CHECK(std::abs(freq - 0.5) <= 0.005);
}

TEST_CASE("dirichlet draws live on the simplex with the right mean") {
    const RelativePayoffSpec rel = RelativePayoffSpec::dirichlet({2.0, 2.0});
    RngStream rng(42, 1);
    RunningStats first;
    for (int i = 0; i < 100000; ++i) {
        const SimplexVector r = rel.draw(rng);
        CHECK(r[0] >= 0.0);
        CHECK(r[0] + r[1] == doctest::Approx(1.0).epsilon(1e-12));
        first.add(r[0]);
    }
    CHECK(std::abs(first.mean - 0.5) <= 0.005);
}

TEST_CASE("empirical mean matches closed-form lambda* within 4 standard errors") {
    const RelativePayoffSpec rel = RelativePayoffSpec::dirichlet({1.0, 3.0});
    CHECK(rel.mean()[0] == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(rel.mean()[1] == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(rel.epsilon() == doctest::Approx(0.25).epsilon(1e-15));

    RngStream rng(5, 0);
    RunningStats first, second;
    for (int i = 0; i < 1000000; ++i) {
        const SimplexVector r = rel.draw(rng);
        first.add(r[0]);
        second.add(r[1]);
    }
    CHECK(std::abs(first.mean - 0.25) <= 4.0 * first.std_error());
    CHECK(std::abs(second.mean - 0.75) <= 4.0 * second.std_error());
}

TEST_CASE("identical streams give bit-identical sequences") {
    const GrowthSpec growth = GrowthSpec::lognormal(0.05, 0.1);
    const RelativePayoffSpec rel = RelativePayoffSpec::dirichlet({2.0, 1.0, 1.0});
    RngStream a(123, 9), b(123, 9), c(123, 10);
    bool any_stream_difference = false;
    for (int i = 0; i < 100; ++i) {
        const PayoffStep sa = draw_step(growth, rel, a);
        const PayoffStep sb = draw_step(growth, rel, b);
        const PayoffStep sc = draw_step(growth, rel, c);
        CHECK(sa.growth == sb.growth);
        for (std::size_t n = 0; n < 3; ++n) CHECK(sa.relative[n] == sb.relative[n]);
        if (sa.growth != sc.growth) any_stream_difference = true;
    }
    CHECK(any_stream_difference);
}

TEST_CASE("payoff_vector evaluates the factorization") {
    SUBCASE("growth and relative split") {
        const PayoffStep step{1.2, SimplexVector({0.6, 0.4})};
        const PayoffVector out = payoff_vector(step, std::log(2.0));
        CHECK(out.values[0] == doctest::Approx(1.44).epsilon(1e-14));
        CHECK(out.values[1] == doctest::Approx(0.96).epsilon(1e-14));
        CHECK(out.log_total == doctest::Approx(std::log(2.4)).epsilon(1e-14));
    }
    SUBCASE("identity growth keeps the total") {
        const PayoffStep step{1.0, SimplexVector({0.25, 0.25, 0.25, 0.25})};
        const PayoffVector out = payoff_vector(step, 0.0);
        for (double v : out.values) CHECK(v == doctest::Approx(0.25).epsilon(1e-14));
        CHECK(out.log_total == 0.0);
    }
    SUBCASE("single-asset mass") {
        const PayoffStep step{1.05, SimplexVector({1.0, 0.0})};
        const PayoffVector out = payoff_vector(step, 0.0);
        CHECK(out.values[0] == doctest::Approx(1.05).epsilon(1e-14));
        CHECK(out.values[1] == 0.0);
    }
}

TEST_CASE("example1 payoffs") {
    const SimplexVector r({0.6, 0.4});
    const auto p1 = example1_payoffs(r, 1.2, 1);
    CHECK(p1.values()[0] == doctest::Approx(0.72).epsilon(1e-14));
    CHECK(p1.values()[1] == doctest::Approx(0.48).epsilon(1e-14));

    const auto p3 = example1_payoffs(SimplexVector({0.5, 0.5}), 2.0, 3);
    CHECK(p3.values()[0] == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(p3.values()[1] == doctest::Approx(4.0).epsilon(1e-14));

    const auto p2 = example1_payoffs(r, 1.2, 2);
    CHECK(p2.values()[0] == doctest::Approx(0.864).epsilon(1e-13));
    CHECK(p2.values()[1] == doctest::Approx(0.576).epsilon(1e-13));

    CHECK_THROWS_AS(example1_payoffs(r, 1.2, 0), DomainError);
    CHECK_THROWS_AS(example1_payoffs(r, 0.9, 1), DomainError);
    CHECK_THROWS_AS(example1_payoffs(SimplexVector({1.0, 0.0}), 1.2, 1), DomainError);
}

TEST_CASE("growth statistics") {
    const GrowthStats constant = growth_stats(GrowthSpec::constant(1.2));
    CHECK(constant.theta == doctest::Approx(0.1823215567939546).epsilon(1e-14));
    CHECK(constant.sigma == 0.0);

    const GrowthStats two_point = growth_stats(GrowthSpec::discrete({1.1, 1.3}, {0.5, 0.5}));
    CHECK(two_point.theta == doctest::Approx(0.178837222135908).epsilon(1e-14));
    CHECK(two_point.sigma == doctest::Approx(0.08352704233158306).epsilon(1e-13));

    const GrowthStats lognormal = growth_stats(GrowthSpec::lognormal(0.05, 0.1));
    CHECK(lognormal.theta == 0.05);
    CHECK(lognormal.sigma == 0.1);
}

TEST_CASE("non-positive drift is rejected") {
    CHECK_THROWS_AS(GrowthSpec::constant(0.9), NonPositiveDrift);
    CHECK_THROWS_AS(GrowthSpec::constant(1.0), NonPositiveDrift);
    CHECK_THROWS_AS(GrowthSpec::discrete({0.5, 1.2}, {0.8, 0.2}), NonPositiveDrift);
    CHECK_THROWS_AS(GrowthSpec::lognormal(-0.01, 0.1), NonPositiveDrift);
    CHECK_THROWS_AS(GrowthSpec::discrete({1.1, -1.0}, {0.5, 0.5}), InvalidSpec);
}

TEST_CASE("linear independence flags") {
    const RelativePayoffSpec independent = RelativePayoffSpec::discrete(
        {SimplexVector({0.9, 0.1}), SimplexVector({0.1, 0.9})}, {0.5, 0.5});
    CHECK(independent.linearly_independent());

    const RelativePayoffSpec repeated = RelativePayoffSpec::discrete(
        {SimplexVector({0.5, 0.5}), SimplexVector({0.5, 0.5})}, {0.5, 0.5});
    CHECK_FALSE(repeated.linearly_independent());

    CHECK_FALSE(RelativePayoffSpec::constant(SimplexVector({0.6, 0.4})).linearly_independent());
    CHECK(RelativePayoffSpec::dirichlet({1.0, 2.0}).linearly_independent());

    // rank 2 < N = 3: every point on the segment between two support points
    const RelativePayoffSpec flat = RelativePayoffSpec::discrete(
        {SimplexVector({0.6, 0.2, 0.2}), SimplexVector({0.2, 0.4, 0.4})}, {0.5, 0.5});
    CHECK_FALSE(flat.linearly_independent());
}

TEST_CASE("relative payoff spec validation") {
    // expected payoff of asset 2 would be 0
    CHECK_THROWS_AS(RelativePayoffSpec::constant(SimplexVector({1.0, 0.0})), InvalidSpec);
    CHECK_THROWS_AS(RelativePayoffSpec::discrete({SimplexVector({1.0, 0.0})}, {1.0}), InvalidSpec);
    CHECK_THROWS_AS(RelativePayoffSpec::dirichlet({1.0, -2.0}), InvalidSpec);
    CHECK_THROWS_AS(
        RelativePayoffSpec::discrete({SimplexVector({0.5, 0.5})}, {0.5}), InvalidSpec);
}
