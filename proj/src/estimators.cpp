#include "propest/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "propest/errors.hpp"
#include "propest/summation.hpp"

namespace propest {

namespace {

constexpr double kPi2 = std::numbers::pi * std::numbers::pi;

}  // namespace

EstimateResult estimate(const std::vector<double>& z, const KernelAtT& kernel, unsigned threads) {
    if (z.empty()) throw EmptyInput("no observations");
    for (std::size_t i = 0; i < z.size(); ++i) {
        if (!std::isfinite(z[i])) {
            throw NonFiniteObservation("observation " + std::to_string(i) + " is not finite");
        }
    }
    const KernelPair& pair = kernel.pair();
    const bool ext = pair.null().is_extension();
    const double sum = parallel_sum(z.size(), threads, [&](std::size_t i) {
        const double k = kernel.k(z[i]);
        return ext ? k : 1.0 - k;
    });
    const double mean = sum / static_cast<double>(z.size());

    EstimateResult r;
    if (ext) {
        r.pi0_hat = mean;
        r.pi1_hat = 1.0 - mean;
    } else {
        r.pi1_hat = mean;
        r.pi0_hat = 1.0 - mean;
    }
    r.pi1_hat_clamped = std::clamp(r.pi1_hat, 0.0, 1.0);
    r.t_used = kernel.t();
    r.m = z.size();
    r.null = pair.null().summary();
    r.family = pair.modulus().id;
    return r;
}

EstimateResult estimate(const std::vector<double>& z, const KernelPair& pair, double t,
                        unsigned threads) {
    if (z.empty()) throw EmptyInput("no observations");
    return estimate(z, pair.at(t), threads);
}

double default_speed(std::size_t m, double gamma) {
    if (m < 2) throw InvalidM("speed needs m >= 2, got " + std::to_string(m));
    if (!std::isfinite(gamma) || gamma <= 0.0) throw InvalidConfig("gamma must be positive");
    return std::sqrt(2.0 * gamma * std::log(static_cast<double>(m)));
}

double variance_bound_bounded(double t, std::size_t m, double a, double b, double omega_sup,
                              double g_t0) {
    const double w = b - a;
    return 2.0 / static_cast<double>(m) * g_t0 * g_t0 *
           (omega_sup * omega_sup + w * w * t * t / kPi2);
}

double variance_bound_onesided(double t, std::size_t m, double d_tilde, double r_bar,
                               double r_check, double omega_sup, double g_t0) {
    const double md = static_cast<double>(m);
    return 4.0 / (kPi2 * md) * (r_bar * r_bar + t * t * r_check * r_check * d_tilde) +
           omega_sup * omega_sup / (2.0 * md) * g_t0 * g_t0;
}

OneSidedSuprema onesided_suprema(const LocationShiftFamily& family, double t,
                                 const QuadratureConfig& quad) {
    if (!family.has_finite_first_moment()) {
        throw UnsupportedFamily("family '" + family.id() + "' has no finite first moment");
    }
    quad.validate();
    // Node grid including both ends of each axis.
    const std::size_t ny = UniformGrid::cell_count(1.0, quad.norm);
    const std::size_t ns = UniformGrid::cell_count(2.0, quad.norm);
    OneSidedSuprema out;
    for (std::size_t j = 0; j <= ny; ++j) {
        const double y = static_cast<double>(j) / static_cast<double>(ny);
        for (std::size_t k = 0; k <= ns; ++k) {
            const double s = -1.0 + 2.0 * static_cast<double>(k) / static_cast<double>(ns);
            out.r_bar = std::max(out.r_bar, std::abs(family.recip_cf_sderiv_over_y(t, y, s)));
            out.r_check = std::max(out.r_check, family.recip_modulus(t * y * s));
        }
    }
    return out;
}

double variance_bound_extension_k1(double t, std::size_t m, double a, double b, double phi_sup,
                                   double g_t0) {
    const double w = b - a;
    return t * t * w * w * phi_sup * phi_sup * g_t0 * g_t0 / (kPi2 * static_cast<double>(m));
}

double variance_bound_extension(double t, std::size_t m, double a, double b, double phi_sup,
                                double omega_sup, double g_t0) {
    const double w = b - a;
    return 2.0 * phi_sup * phi_sup / static_cast<double>(m) * g_t0 * g_t0 *
           (w * w * t * t / kPi2 + omega_sup * omega_sup);
}

double gaussian_variance_bound_bounded(double t, std::size_t m, double a, double b,
                                       double omega_sup, double sigma) {
    const double ts = t * sigma;
    const double w = b - a;
    return 32.0 * std::exp(ts * ts) / (static_cast<double>(m) * std::pow(ts, 4)) *
           (omega_sup * omega_sup + w * w * t * t / kPi2);
}

double gaussian_variance_bound_onesided(double t, std::size_t m, double mean_mu_sq,
                                        double omega_sup, double sigma) {
    const double md = static_cast<double>(m);
    const double s2 = sigma * sigma;
    const double e = std::exp(t * t * s2);
    return 4.0 * t * t * e / (kPi2 * md) * (t * t * s2 * s2 + s2 + mean_mu_sq) +
           omega_sup * omega_sup / md * 8.0 * e / (std::pow(t * sigma, 4));
}

}  // namespace propest
