#include "propest/oracles.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "propest/errors.hpp"

namespace propest {

namespace {

// Taylor series; at |x| = 4 the terms peak near 4^3/18 and the sum still
// carries ~15 significant digits.
double si_series(double x) {
    const double x2 = x * x;
    double term = x;  // (-1)^k x^(2k+1) / (2k+1)!
    double sum = x;
    for (int k = 1; k < 60; ++k) {
        term *= -x2 / ((2.0 * k) * (2.0 * k + 1.0));
        const double add = term / (2.0 * k + 1.0);
        sum += add;
        if (std::abs(add) < 1e-17 * std::abs(sum)) break;
    }
    return sum;
}

// For x > 4: Si(x) = pi/2 - f(x) cos x - g(x) sin x, with f, g taken from the
// continued fraction of E1(ix) (modified Lentz).
double si_auxiliary(double x) {
    using cd = std::complex<double>;
    constexpr double tiny = 1e-300;
    cd b(1.0, x);
    cd c(1.0 / tiny, 0.0);
    cd d = 1.0 / b;
    cd h = d;
    for (int i = 2; i < 500; ++i) {
        const double a = -static_cast<double>((i - 1) * (i - 1));
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        const cd del = c * d;
        h *= del;
        if (std::abs(del.real() - 1.0) + std::abs(del.imag()) < 1e-16) break;
    }
    // h * exp(-ix) = E1(ix) = -Ci(x) + i (Si(x) - pi/2)
    h *= cd(std::cos(x), -std::sin(x));
    return std::numbers::pi / 2.0 + h.imag();
}

}  // namespace

double sine_integral(double x) {
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return std::copysign(std::numbers::pi / 2.0, x);
    const double ax = std::abs(x);
    const double v = ax <= 4.0 ? si_series(ax) : si_auxiliary(ax);
    return x < 0.0 ? -v : v;
}

double dirichlet_limit_bounded(double mu, double a, double b) {
    if (!(a < b)) throw InvalidNull("bounded null requires a < b");
    if (mu > a && mu < b) return 1.0;
    if (mu == a || mu == b) return 0.5;
    return 0.0;
}

double dirichlet_limit_onesided(double mu, double b) {
    if (mu > b) return 0.5;
    if (mu == b) return 0.0;
    return -0.5;
}

double dirichlet_limit_extension(double mu, double phi_mu, double a, double b) {
    return phi_mu * dirichlet_limit_bounded(mu, a, b);
}

double dphi_speed_bound(double t, double mu, double a, double b, const PhiStats& phi) {
    if (!(a < b)) throw InvalidNull("bounded null requires a < b");
    const double delta = std::min(std::abs(mu - a), std::abs(mu - b));
    if (!(delta > 0.0) || std::min(t * delta, t * (b - a)) < 2.0) {
        throw PreconditionViolated("speed bound needs min(t*delta, t*(b-a)) >= 2 and mu off {a, b}");
    }
    return 4.0 * phi.c_mu / (std::numbers::pi * t) +
           4.0 * phi.sup_norm / t * (1.0 / (b - a) + 3.0 / delta);
}

}  // namespace propest
