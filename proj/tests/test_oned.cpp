#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "oracles.hpp"
#include "support.hpp"

using namespace cheeger2d;
using Catch::Approx;

TEST_CASE("elementary integrand and its convex envelope") {
    auto mid = g_and_gss(0.5);
    CHECK(mid.first == 0.0);
    CHECK(mid.second == -0.5);
    auto one = g_and_gss(1.0);
    CHECK(one.first == -1.0);
    CHECK(one.second == -1.0);
    auto neg = g_and_gss(-1.0);
    CHECK(neg.first == 1.0);
    CHECK(neg.second == 1.0);
    auto big = g_and_gss(3.0);
    CHECK(big.first == -1.0);
    CHECK(big.second == -1.0);
}

TEST_CASE("interval solution closed forms") {
    OneDSolution prof = beta_1d(0.5, 2.0);
    CHECK(prof.branch == Branch::Profile);
    CHECK(prof.alpha_c == Approx(1.0 / std::sqrt(3.0)).margin(1e-12));
    // stationarity oracle: alpha / sqrt(1 + alpha^2) = 1 - lambda
    CHECK(prof.alpha_c / std::sqrt(1.0 + prof.alpha_c * prof.alpha_c) ==
          Approx(0.5).margin(1e-12));
    CHECK(prof.beta == Approx(3.7320508).margin(1e-7));
    CHECK(prof.beta < 4.0);

    OneDSolution one = beta_1d(3.0, 0.5);
    CHECK(one.branch == Branch::AllOne);
    CHECK(one.beta == Approx(0.0).margin(1e-12));
    CHECK(one.alpha_c == 0.0);

    OneDSolution zero = beta_1d(0.0, 1.3);
    CHECK(zero.branch == Branch::AllZero);
    CHECK(zero.beta == Approx(2.6).margin(1e-12));

    CHECK_THROWS_AS(beta_1d(-0.1, 1.0), out_of_domain);
    CHECK_THROWS_AS(beta_1d(1.0, 0.0), out_of_domain);
}

TEST_CASE("interval solution matches the grid-search oracle") {
    for (int i = 0; i < 20; ++i) {
        for (int j = 0; j < 20; ++j) {
            double lambda = 0.05 + 3.0 * i / 19.0;
            double R = 0.1 + 4.0 * j / 19.0;
            double oracle = testsupport::beta_1d_grid_oracle(lambda, R, 20000);
            CHECK(beta_1d(lambda, R).beta == Approx(oracle).margin(1e-6));
        }
    }
}

TEST_CASE("interval critical values") {
    auto two = criticals_1d(2.0);
    CHECK(two.first == 0.4);
    CHECK(two.second == 1.0);
    auto half = criticals_1d(0.5);
    CHECK(half.first == 2.0);
    CHECK(half.second == 2.0);
    auto unit = criticals_1d(1.0);
    CHECK(unit.first == 1.0);
    CHECK(unit.second == 1.0);
    CHECK_THROWS_AS(criticals_1d(0.0), out_of_domain);
}

TEST_CASE("closed-form criticals agree with branch-switch bisection") {
    for (double R : {0.5, 0.9, 1.5, 2.0, 4.0}) {
        auto [l0, l1] = criticals_1d(R);
        double b0 = bisect_predicate(
            [&](double l) { return beta_1d(l, R).branch != Branch::AllZero; }, 0.0, 5.0,
            1e-10);
        double b1 = bisect_predicate(
            [&](double l) { return beta_1d(l, R).branch == Branch::AllOne; }, 0.0, 5.0,
            1e-10);
        CHECK(b0 == Approx(l0).margin(1e-8));
        CHECK(b1 == Approx(l1).margin(1e-8));
    }
}

TEST_CASE("beta versus its total-variation variant") {
    for (double R : {0.5, 1.0, 2.0, 3.5}) {
        auto [l0, l1] = criticals_1d(R);
        for (int i = 0; i <= 30; ++i) {
            double l = 0.1 * i;
            double b = beta_1d(l, R).beta;
            double b0 = beta0_1d(l, R);
            CHECK(b <= b0 + 1e-12);
            if (R > 1.0 && l > l0 + 1e-6 && l < l1 - 1e-6) CHECK(b < b0 - 1e-9);
        }
    }
}
