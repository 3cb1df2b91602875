#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "propest/baselines.hpp"
#include "propest/errors.hpp"

using namespace propest;
using Catch::Approx;

namespace {

std::vector<double> uniform_grid(std::size_t m) {
    std::vector<double> p(m);
    for (std::size_t i = 0; i < m; ++i) p[i] = (double(i) + 0.5) / double(m);
    return p;
}

// Direct transcription of the formula, 1-based indices.
double mr_brute(std::vector<double> p) {
    std::sort(p.begin(), p.end());
    const double m = double(p.size());
    const double b = std::sqrt(2.0 * std::log(std::log(m))) / std::sqrt(m);
    double best = -1e300;
    for (std::size_t i = 2; i <= p.size() - 2; ++i) {
        const double q = p[i - 1];
        best = std::max(best, (double(i) / m - q - b * std::sqrt(q * (1 - q))) / (1 - q));
    }
    return std::min(1.0, std::max(0.0, best));
}

}  // namespace

TEST_CASE("one-sided p-values", "[baselines]") {
    const LocationShiftFamily g(FamilyKind::Gaussian, 1.0);
    CHECK(one_sided_pvalue(0.0, 0.0, g) == Approx(0.5).epsilon(1e-15));
    CHECK(one_sided_pvalue(40.0, 0.0, g) == 0.0);
    CHECK(std::abs(one_sided_pvalue(1.6449, 0.0, g) - 0.05) <= 1e-4);
    CHECK(one_sided_pvalue(2.5, 1.0, g) == Approx(one_sided_pvalue(1.5, 0.0, g)));
    for (double x : {-3.0, 0.0, 2.0}) {
        const double p = one_sided_pvalue(x, 0.3, LocationShiftFamily(FamilyKind::Cauchy, 1.0));
        CHECK(p >= 0.0);
        CHECK(p <= 1.0);
    }
}

TEST_CASE("MR on a uniform grid is zero", "[baselines]") {
    CHECK(mr_estimate(PValueVector(uniform_grid(1000))) == 0.0);
}

TEST_CASE("MR with tiny p-values", "[baselines]") {
    const std::vector<double> p(100, 1e-8);
    const double b = std::sqrt(2.0 * std::log(std::log(100.0))) / 10.0;
    const double q = 1e-8;
    const double want = (0.98 - q - b * std::sqrt(q * (1 - q))) / (1 - q);
    CHECK(mr_estimate(PValueVector(p)) == Approx(want).epsilon(1e-12));
    CHECK(mr_estimate(PValueVector(p)) == Approx(mr_brute(p)).epsilon(1e-14));
}

TEST_CASE("MR matches brute force on random inputs", "[baselines][property]") {
    std::mt19937_64 e(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (std::size_t m : {5u, 9u, 16u, 100u, 1000u}) {
        std::vector<double> p(m);
        for (auto& v : p) v = std::pow(u(e), 1.5);
        CHECK(mr_estimate(PValueVector(p)) == Approx(mr_brute(p)).epsilon(1e-13).margin(1e-15));
    }
}

TEST_CASE("MR is order invariant and monotone", "[baselines][property]") {
    std::mt19937_64 e(4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<double> p(200);
        for (auto& v : p) v = u(e);
        const double base = mr_estimate(PValueVector(p));
        std::shuffle(p.begin(), p.end(), e);
        CHECK(mr_estimate(PValueVector(p)) == base);
        for (auto& v : p) v /= 2.0;
        CHECK(mr_estimate(PValueVector(p)) >= base);
    }
}

TEST_CASE("MR precondition", "[baselines][errors]") {
    CHECK_THROWS_AS(mr_estimate(PValueVector({0.1, 0.2, 0.3, 0.4})), TooFewPValues);
    CHECK_NOTHROW(mr_estimate(PValueVector({0.1, 0.2, 0.3, 0.4, 0.5})));
}

TEST_CASE("Storey fixed lambda", "[baselines]") {
    CHECK(storey_estimate(PValueVector({0.6, 0.7, 0.8, 0.9}), 0.5) == 0.0);
    CHECK(storey_estimate(PValueVector({0.1, 0.2, 0.8, 0.9}), 0.5) == 0.0);
    CHECK(storey_estimate(PValueVector(uniform_grid(1000)), 0.5) == 0.0);
    // 1 of 4 above 0.5: pi0 = 0.5, pi1 = 0.5
    CHECK(storey_estimate(PValueVector({0.01, 0.02, 0.03, 0.9}), 0.5) == Approx(0.5));
    std::mt19937_64 e(6);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int rep = 0; rep < 30; ++rep) {
        std::vector<double> p(37);
        for (auto& v : p) v = u(e) * u(e);
        const double s = storey_estimate(PValueVector(p), 0.3);
        CHECK(s >= 0.0);
        CHECK(s <= 1.0);
    }
}

TEST_CASE("Storey and p-value validation", "[baselines][errors]") {
    CHECK_THROWS_AS(storey_estimate(PValueVector({0.5}), 0.0), InvalidLambda);
    CHECK_THROWS_AS(storey_estimate(PValueVector({0.5}), 1.0), InvalidLambda);
    CHECK_THROWS_AS(storey_estimate(PValueVector({}), 0.5), EmptyInput);
    CHECK_THROWS_AS(PValueVector({0.5, 1.2}), InvalidConfig);
    CHECK_THROWS_AS(PValueVector({NAN}), InvalidConfig);
}

TEST_CASE("sorted view is stable", "[baselines]") {
    const PValueVector p({0.3, 0.1, 0.3, 0.05});
    CHECK(p.order() == std::vector<std::size_t>{3, 1, 0, 2});
    CHECK(p.sorted(0) == 0.05);
}
