#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "propest/errors.hpp"
#include "propest/quadrature.hpp"

using namespace propest;
using Catch::Approx;

TEST_CASE("constant integrand is exact", "[quadrature]") {
    CHECK(integrate_1d([](double) { return 1.0; }, 0.0, 1.0) == Approx(1.0).epsilon(1e-14));
    CHECK(integrate_2d([](double, double) { return 1.0; }, {0, 1, 0, 1}) ==
          Approx(1.0).epsilon(1e-14));
}

TEST_CASE("empty interval integrates to zero", "[quadrature]") {
    CHECK(integrate_1d([](double) { return 5.0; }, 2.0, 2.0) == 0.0);
}

TEST_CASE("triangular density integrates to one", "[quadrature]") {
    const double v = integrate_1d([](double s) { return 1.0 - std::abs(s); }, -1.0, 1.0);
    CHECK(std::abs(v - 1.0) <= 1e-4);
}

TEST_CASE("midpoint rule on s^2", "[quadrature]") {
    const double v = integrate_1d([](double s) { return s * s; }, 0.0, 1.0);
    CHECK(std::abs(v - 1.0 / 3.0) <= 1e-5);
}

TEST_CASE("2-D products and sine-integral reduction", "[quadrature]") {
    CHECK(std::abs(integrate_2d([](double y, double s) { return y * s; }, {0, 1, 0, 1}) - 0.25) <=
          1e-4);
    const double v = integrate_2d([](double y, double s) { return std::cos(y * s); }, {0, 1, 0, 1});
    CHECK(std::abs(v - 0.946083070367183) <= 1e-4);
}

TEST_CASE("cell count and node placement", "[quadrature]") {
    CHECK(UniformGrid::cell_count(3.0, 0.01) == 300);
    CHECK(UniformGrid::cell_count(1.0, 0.01) == 100);
    CHECK(UniformGrid::cell_count(0.001, 0.01) == 1);
    CHECK(UniformGrid::cell_count(1.005, 0.01) == 101);

    const UniformGrid mid(0.0, 1.0, {0.25, RiemannRule::Midpoint});
    REQUIRE(mid.size() == 4);
    CHECK(mid[0] == 0.125);
    CHECK(mid[3] == 0.875);
    const UniformGrid left(0.0, 1.0, {0.25, RiemannRule::LeftEndpoint});
    CHECK(left[0] == 0.0);
    CHECK(left[3] == 0.75);
}

TEST_CASE("left endpoint rule is first order", "[quadrature]") {
    const QuadratureConfig cfg{0.01, RiemannRule::LeftEndpoint};
    const double v = integrate_1d([](double s) { return s; }, 0.0, 1.0, cfg);
    CHECK(v == Approx(0.495).epsilon(1e-12));
}

TEST_CASE("linearity", "[quadrature][property]") {
    auto f = [](double x) { return std::sin(3.0 * x) + x * x; };
    auto g = [](double x) { return std::exp(-x); };
    const double lhs = integrate_1d([&](double x) { return 2.5 * f(x) - 1.5 * g(x); }, -1.0, 2.0);
    const double rhs = 2.5 * integrate_1d(f, -1.0, 2.0) - 1.5 * integrate_1d(g, -1.0, 2.0);
    CHECK(std::abs(lhs - rhs) <= 1e-13);
}

TEST_CASE("refinement follows the second-order rate", "[quadrature][property]") {
    auto f = [](double x) { return std::exp(x) * std::cos(2.0 * x); };
    // exact: integral over [0, 1] of e^x cos 2x
    const double exact = (std::exp(1.0) * (std::cos(2.0) + 2.0 * std::sin(2.0)) - 1.0) / 5.0;
    for (double norm : {0.1, 0.05, 0.02}) {
        const double coarse = integrate_1d(f, 0.0, 1.0, {norm});
        const double fine = integrate_1d(f, 0.0, 1.0, {norm / 2});
        const double predicted = std::abs(coarse - exact) * 0.75;  // h^2: error drops by 4
        CHECK(std::abs(coarse - fine) <= 4.0 * predicted);
        CHECK(std::abs(fine - exact) < std::abs(coarse - exact));
    }
}

TEST_CASE("separable 2-D integrand factorises", "[quadrature][property]") {
    auto fy = [](double y) { return 1.0 + y * y; };
    auto fs = [](double s) { return std::cos(s); };
    const Box box{-1.0, 2.0, 0.0, 1.0};
    const double joint = integrate_2d([&](double y, double s) { return fy(y) * fs(s); }, box);
    const double prod = integrate_1d(fy, -1.0, 2.0) * integrate_1d(fs, 0.0, 1.0);
    CHECK(std::abs(joint - prod) <= 1e-12 * std::abs(prod));
}

TEST_CASE("non-finite integrand is reported", "[quadrature][errors]") {
    CHECK_THROWS_AS(integrate_1d([](double x) { return 1.0 / (x - 0.005); }, 0.0, 1.0),
                    NonFiniteIntegrand);
    CHECK_THROWS_AS(integrate_2d([](double, double) { return NAN; }, {0, 1, 0, 1}),
                    NonFiniteIntegrand);
    CHECK_THROWS_AS(integrate_1d([](double) { return 1.0; }, 0.0, 1.0, {0.0}), InvalidConfig);
    CHECK_THROWS_AS(integrate_1d([](double) { return 1.0; }, 1.0, 0.0), InvalidConfig);
}

TEST_CASE("rule names round-trip", "[quadrature]") {
    CHECK(parse_rule("midpoint") == RiemannRule::Midpoint);
    CHECK(parse_rule("left") == RiemannRule::LeftEndpoint);
    CHECK(rule_name(RiemannRule::LeftEndpoint) == "left");
    CHECK_THROWS_AS(parse_rule("gauss"), InvalidConfig);
}
