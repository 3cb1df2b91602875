#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "propest/errors.hpp"
#include "propest/oracles.hpp"
#include "support.hpp"

using namespace propest;
using Catch::Approx;

TEST_CASE("sine integral reference values", "[oracles]") {
    CHECK(sine_integral(0.0) == 0.0);
    // 30-digit references
    CHECK(sine_integral(testref::kPi) == Approx(1.85193705198246617).epsilon(1e-14));
    CHECK(sine_integral(0.5) == Approx(0.493107418043066689).epsilon(1e-14));
    CHECK(sine_integral(1.0) == Approx(0.946083070367183015).epsilon(1e-14));
    CHECK(sine_integral(2.0) == Approx(1.60541297680269485).epsilon(1e-14));
    CHECK(sine_integral(10.0) == Approx(1.65834759421887405).epsilon(1e-13));
    CHECK(sine_integral(50.0) == Approx(1.55161707248593589).epsilon(1e-13));
}

TEST_CASE("sine integral against fine quadrature", "[oracles][property]") {
    for (double x : {0.5, 1.0, 2.0, testref::kPi, 10.0, 50.0}) {
        INFO("x = " << x);
        CHECK(std::abs(sine_integral(x) - testref::si_midpoint(x)) <= 1e-6);
    }
}

TEST_CASE("sine integral is odd and continuous across the branch switch", "[oracles][property]") {
    for (double x : {0.01, 0.7, 3.9, 4.0, 4.1, 12.0, 300.0}) {
        CHECK(sine_integral(-x) == -sine_integral(x));
    }
    const double below = sine_integral(std::nextafter(4.0, 0.0));
    const double above = sine_integral(std::nextafter(4.0, 10.0));
    CHECK(std::abs(below - above) <= 1e-13);
    for (double x = 3.5; x <= 5.0; x += 0.05) {
        CHECK(std::abs(sine_integral(x) - testref::si_midpoint(x, 200000)) <= 1e-9);
    }
}

TEST_CASE("sine integral tail bound", "[oracles]") {
    for (double t : {2.0, 5.0, 20.0, 100.0, 1e4}) {
        CHECK(std::abs(sine_integral(t) - testref::kPi / 2) <= 2 * testref::kPi / t);
    }
    CHECK(std::abs(sine_integral(100.0) - testref::kPi / 2) <= 2 * testref::kPi / 100.0);
    CHECK(sine_integral(INFINITY) == testref::kPi / 2);
}

TEST_CASE("bounded Dirichlet limits", "[oracles]") {
    CHECK(dirichlet_limit_bounded(0.5, -1, 2) == 1.0);
    CHECK(dirichlet_limit_bounded(-1, -1, 2) == 0.5);
    CHECK(dirichlet_limit_bounded(2, -1, 2) == 0.5);
    CHECK(dirichlet_limit_bounded(9, -1, 2) == 0.0);
    CHECK(dirichlet_limit_bounded(-3, -1, 2) == 0.0);
    CHECK_THROWS_AS(dirichlet_limit_bounded(0, 1, 1), InvalidNull);
}

TEST_CASE("one-sided Dirichlet limits", "[oracles]") {
    CHECK(dirichlet_limit_onesided(0.0, 0.0) == 0.0);
    CHECK(dirichlet_limit_onesided(1.0, 0.0) == 0.5);
    CHECK(dirichlet_limit_onesided(-1.0, 0.0) == -0.5);
    CHECK(dirichlet_limit_extension(1.0, 3.0, -2, 2) == 3.0);
    CHECK(dirichlet_limit_extension(2.0, 4.0, -2, 2) == 2.0);
}

TEST_CASE("extension speed bound", "[oracles]") {
    const PhiStats one{1.0, 0.0};
    CHECK(dphi_speed_bound(100, 0.5, -1, 2, one) == Approx(0.04 * (1.0 / 3.0 + 2.0)));
    CHECK(dphi_speed_bound(200, 0.5, -1, 2, one) ==
          Approx(0.5 * dphi_speed_bound(100, 0.5, -1, 2, one)));
    CHECK_THROWS_AS(dphi_speed_bound(1.9 / 3.0, 0.5, -1, 2, one), PreconditionViolated);
    CHECK_THROWS_AS(dphi_speed_bound(100, -1, -1, 2, one), PreconditionViolated);
}
