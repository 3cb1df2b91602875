#pragma once

// Reference computations for tests. Nothing here calls into the library's
// quadrature or kernel code.

#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

namespace testref {

inline constexpr double kPi = std::numbers::pi;

/// Composite Simpson with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b,
                      std::size_t n) {
    if (n % 2) ++n;
    const double h = (b - a) / static_cast<double>(n);
    double s = f(a) + f(b);
    for (std::size_t i = 1; i < n; ++i) {
        s += f(a + h * static_cast<double>(i)) * (i % 2 ? 4.0 : 2.0);
    }
    return s * h / 3.0;
}

/// Si(x) by an n-cell midpoint sum of sin(u)/u.
inline double si_midpoint(double x, std::size_t n = 1000000) {
    const double h = x / static_cast<double>(n);
    double s = 0.0, c = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double u = (static_cast<double>(i) + 0.5) * h;
        const double y = std::sin(u) / u - c;
        const double t = s + y;
        c = (t - s) - y;
        s = t;
    }
    return s * h;
}

/// sin(u) / u with the removable point filled in.
inline double sinc(double u) { return std::abs(u) < 1e-8 ? 1.0 - u * u / 6.0 : std::sin(u) / u; }

/// Bounded K_1 reduced to one dimension: the y-integral of cos(ts(x - y)) is
/// [sin(ts(x - a)) - sin(ts(x - b))] / (ts).
inline double bounded_k1(const std::function<double(double)>& recip, double t, double x,
                         double a, double b, std::size_t n = 200000) {
    return t / kPi * simpson(
                         [&](double s) {
                             return ((x - a) * sinc(t * s * (x - a)) -
                                     (x - b) * sinc(t * s * (x - b))) *
                                    recip(t * s);
                         },
                         0.0, 1.0, n);
}

/// One-sided K_1 reduced to one dimension: the integrand over (y, s) is
/// (1/s) d/dy [sin(tysx) / r0(tys)], so K_1 = (1/pi) int_0^1 sin(tsx) / (s r0(ts)) ds.
inline double onesided_k1(const std::function<double(double)>& recip, double t, double x,
                          std::size_t n = 200000) {
    return 1.0 / kPi *
           simpson([&](double s) { return t * x * sinc(t * s * x) * recip(t * s); }, 0.0, 1.0, n);
}

/// Point kernel by Simpson.
inline double point_k10(const std::function<double(double)>& recip,
                        const std::function<double(double)>& omega, double t, double x,
                        double mu_prime, std::size_t n = 200000) {
    return 2.0 * simpson([&](double s) { return omega(s) * std::cos(t * s * (x - mu_prime)) *
                                                recip(t * s); },
                         0.0, 1.0, n);
}

inline double mean(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

inline double sd(const std::vector<double>& v) {
    const double m = mean(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(v.size() - 1));
}

}  // namespace testref
