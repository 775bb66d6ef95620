#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "satphase/error.hpp"
#include "satphase/rootfind.hpp"
#include "satphase/special.hpp"
#include "satphase/surface.hpp"

using namespace satphase;

TEST_CASE("two_sat_y50 prints the frozen table row") {
    const double printed[] = {1.45, 1.36, 1.29, 1.25, 1.23, 1.21};
    REQUIRE(kY50TableNs.size() == 6);
    for (size_t i = 0; i < kY50TableNs.size(); ++i)
        CHECK(two_decimals(two_sat_y50(kY50TableNs[i])) == printed[i]);
    CHECK(two_sat_y50(100) == doctest::Approx(1.360337735234).epsilon(1e-11));
}

TEST_CASE("two_sat_prob scaling law and window clamp") {
    CHECK(two_sat_prob(1000, 0.5).pr == 1.0);
    CHECK_FALSE(two_sat_prob(1000, 0.5).in_window);

    auto mid = two_sat_prob(300, 1.25);
    CHECK_FALSE(mid.in_window);
    CHECK(mid.pr > 0.49);
    CHECK(mid.pr < 0.51);

    // below-threshold side of the window clamps to one
    auto w = two_sat_prob(50, 0.99);
    CHECK(w.in_window);
    CHECK(w.pr == 1.0);

    for (double N : kY50TableNs) {
        auto p = two_sat_prob(N, two_sat_y50(N));
        CHECK(std::abs(p.pr - 0.5) < 1e-12);
        CHECK_FALSE(p.in_window);
    }
}

TEST_CASE("two_decimals is round-to-nearest at two places") {
    CHECK(two_decimals(1.455) == 1.46);
    CHECK(two_decimals(1.4649) == 1.46);
    CHECK(two_decimals(1.21) == 1.21);
    CHECK(two_decimals(-1.455) == -1.46);
}

TEST_CASE("regression on the exact law recovers it") {
    std::vector<double> ys;
    for (double N : kY50TableNs) ys.push_back(two_sat_y50(N));
    auto fit = y50_regression(kY50TableNs, ys);
    CHECK(fit.C == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(fit.X == doctest::Approx(1.672539608191).epsilon(1e-9));
    CHECK(fit.r2 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fit.X == doctest::Approx(3.0 * std::cbrt(0.25 * std::log(2.0))).epsilon(1e-12));
}

TEST_CASE("regressions on printed and reference rows match frozen fits") {
    auto rounded = two_sat_y50_regression(kY50TableNs, true);
    CHECK(rounded.C == doctest::Approx(1.006191).epsilon(1e-4));
    CHECK(rounded.X == doctest::Approx(1.639749).epsilon(1e-4));
    CHECK(rounded.r2 == doctest::Approx(0.999418).epsilon(1e-4));

    auto exact = two_sat_y50_regression(kY50TableNs, false);
    CHECK(exact.C == doctest::Approx(1.0).epsilon(1e-9));

    REQUIRE(kSimon1986Y50.size() == 6);
    auto simon = y50_regression(kY50TableNs, kSimon1986Y50);
    CHECK(simon.C == doctest::Approx(0.981591).epsilon(1e-4));
    CHECK(simon.X == doctest::Approx(1.646861).epsilon(1e-4));
    CHECK(simon.r2 == doctest::Approx(0.869105).epsilon(1e-4));
}

TEST_CASE("y50_regression input validation") {
    CHECK_THROWS_AS(y50_regression({100, 200}, {1.3, 1.2}), domain_error);
    CHECK_THROWS_AS(y50_regression({100, 100, 100}, {1.3, 1.2, 1.1}), domain_error);
    CHECK_THROWS_AS(y50_regression({100, 200, 300}, {1.3, 1.2}), domain_error);
}

TEST_CASE("mixed-width residual reduces to the pure relations") {
    // width-2 only: root of y u/(1-u^2) = ln((1-u-x/2)/(1-2u))
    double x = 0.1, y = 1.2;
    double u2 = bisect(
        [&](double u) {
            return y * u / (1 - u * u) - std::log((1 - u - x / 2) / (1 - 2 * u));
        },
        x / 2 + 1e-9, 0.5 - 1e-9);
    CHECK(std::abs(two_p_sat_residual(x, y, 0.0, u2)) < 1e-12);

    // width-3 only: any root of the 3-SAT surface satisfies the relation
    for (const auto& rt : solve_u(3, 0.1, 3.5).roots)
        CHECK(std::abs(two_p_sat_residual(0.1, 0.0, 3.5, rt.u)) < 1e-12);
}

TEST_CASE("two_p_sat_residual domain errors") {
    CHECK_THROWS_AS(two_p_sat_residual(0.1, 1.0, 1.0, 0.5), domain_error);
    CHECK_THROWS_AS(two_p_sat_residual(0.1, 1.0, 1.0, -0.1), domain_error);
    CHECK_THROWS_AS(two_p_sat_residual(1.0, 1.0, 1.0, 0.2), domain_error);
}

TEST_CASE("p_c witness slopes confirm first-order behavior") {
    auto w = two_p_sat_pc();
    CHECK(w.p_c == 0.5);
    CHECK(w.slope_1e3 == doctest::Approx(1.001782).epsilon(1e-5));
    CHECK(w.slope_1e4 == doctest::Approx(1.000178).epsilon(1e-5));
    CHECK(std::abs(w.slope_1e3 - 1.0) <= 2e-3);
    CHECK(std::abs(w.slope_1e4 - 1.0) <= 2e-4);
}

TEST_CASE("two_p_sat_y50 frozen value and domain") {
    CHECK(two_p_sat_y50(100, 0.5, 0.5) == doctest::Approx(1.226998549).epsilon(1e-8));
    CHECK(two_p_sat_y50(100, 0.0, 0.5) == doctest::Approx(two_sat_y50(100)).epsilon(1e-12));
    CHECK_THROWS_AS(two_p_sat_y50(100, 1.0, 0.5), domain_error);
    CHECK_THROWS_AS(two_p_sat_y50(100, -0.1, 0.5), domain_error);
    CHECK_THROWS_AS(two_p_sat_y50(100, 0.5, 0.0), domain_error);
    CHECK_THROWS_AS(two_p_sat_y50(100, 0.5, 1.0), domain_error);
}

TEST_CASE("2-COL window scales exactly as 2-SAT") {
    for (double N : kY50TableNs) CHECK(two_col_y50(N) == two_sat_y50(N));
}
