#include <doctest.h>

#include <cmath>
#include <vector>

#include "marketgame/errors.hpp"
#include "marketgame/numeric.hpp"
#include "marketgame/rng.hpp"
#include "marketgame/simplex.hpp"

using namespace marketgame;

TEST_CASE("l1 and l2 norms") {
    std::vector<double> unit{1.0, 0.0};
    CHECK(l1_norm(unit) == 1.0);
    CHECK(l2_norm(unit) == 1.0);

    std::vector<double> half{0.5, 0.5};
    CHECK(l1_norm(half) == 1.0);
    CHECK(l2_norm(half) == doctest::Approx(0.7071067811865476).epsilon(1e-15));

    std::vector<double> triangle{0.3, -0.4};
    CHECK(l1_norm(triangle) == doctest::Approx(0.7).epsilon(1e-15));
    CHECK(l2_norm(triangle) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("norm sandwich l2 <= l1 <= sqrt(N) l2") {
    RngStream rng(2024, 0);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(rng.uniform() * 6);
        std::vector<double> x(n);
        for (double& v : x) v = rng.normal();
        const double l1 = l1_norm(x);
        const double l2 = l2_norm(x);
        CHECK(l2 <= l1 * (1 + 1e-12));
        CHECK(l1 <= std::sqrt(static_cast<double>(n)) * l2 * (1 + 1e-12));
    }
}

TEST_CASE("make_simplex normalizes and validates") {
    const SimplexVector even = make_simplex({2.0, 2.0});
    CHECK(even[0] == 0.5);
    CHECK(even[1] == 0.5);

    const SimplexVector vertex = make_simplex({1.0, 0.0, 0.0});
    CHECK(vertex[0] == 1.0);
    CHECK(vertex[1] == 0.0);

    const SimplexVector already = make_simplex({0.6, 0.4});
    CHECK(already[0] == 0.6);
    CHECK(already[1] == 0.4);

    CHECK_THROWS_AS(make_simplex({0.5, -0.1}), NonPositiveMass);
    CHECK_THROWS_AS(make_simplex({0.0, 0.0}), NonPositiveMass);
    CHECK_THROWS_AS(make_simplex({1.0}), InvalidSpec);
}

TEST_CASE("make_simplex is idempotent") {
    RngStream rng(7, 0);
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<double> raw(3);
        for (double& v : raw) v = rng.uniform() * 10.0;
        const SimplexVector once = make_simplex(raw);
        const SimplexVector twice = make_simplex(once.as_vector());
        for (std::size_t i = 0; i < 3; ++i) CHECK(once[i] == twice[i]);
        double sum = 0.0;
        for (std::size_t i = 0; i < 3; ++i) sum += once[i];
        CHECK(std::abs(sum - 1.0) <= 1e-12);
    }
}

TEST_CASE("simplex projection lands on the simplex") {
    RngStream rng(11, 0);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> y(4);
        for (double& v : y) v = rng.normal(0.0, 2.0);
        const std::vector<double> p = project_to_simplex(y);
        double sum = 0.0;
        for (double v : p) {
            CHECK(v >= 0.0);
            sum += v;
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
}
