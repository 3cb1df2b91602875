#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "propest/families.hpp"
#include "propest/kernels.hpp"

namespace propest {

struct EstimateResult {
    double pi1_hat = 0.0;          // unclamped
    double pi0_hat = 0.0;          // 1 - pi1_hat
    double pi1_hat_clamped = 0.0;  // pi1_hat clipped to [0, 1]
    double t_used = 0.0;
    std::size_t m = 0;
    std::string null;
    std::string family;
};

/// Mean of 1 - K(t, z_i), or for extension nulls the mean of K(t, z_i), which
/// estimates the phi-weighted null proportion and is reported as pi0_hat.
/// threads = 0 uses every hardware thread. Throws EmptyInput and
/// NonFiniteObservation.
EstimateResult estimate(const std::vector<double>& z, const KernelPair& pair, double t,
                        unsigned threads = 1);

/// Same, reusing kernel tables already built for t.
EstimateResult estimate(const std::vector<double>& z, const KernelAtT& kernel,
                        unsigned threads = 1);

/// sqrt(2 gamma ln m). Throws InvalidM for m < 2 and InvalidConfig for gamma <= 0.
double default_speed(std::size_t m, double gamma = 0.495);

/// Bound on Var(e_m(t)) for bounded nulls.
double variance_bound_bounded(double t, std::size_t m, double a, double b, double omega_sup,
                              double g_t0);

/// Bound on Var(e_m(t)) for one-sided nulls. d_tilde is the mean of
/// sigma_i^2 + mu_i^2 over the m observations.
double variance_bound_onesided(double t, std::size_t m, double d_tilde, double r_bar,
                               double r_check, double omega_sup, double g_t0);

/// Suprema over (y, s) in [0, 1] x [-1, 1] of |(1/y) d/ds 1/r0(tys)| (r_bar)
/// and of 1/r0(tys) (r_check), by grid search at the quadrature norm.
/// Throws UnsupportedFamily for families without a finite first moment.
struct OneSidedSuprema {
    double r_bar = 0.0;
    double r_check = 0.0;
};
OneSidedSuprema onesided_suprema(const LocationShiftFamily& family, double t,
                                 const QuadratureConfig& quad = {});

/// Extension nulls, K_1 part alone.
double variance_bound_extension_k1(double t, std::size_t m, double a, double b, double phi_sup,
                                   double g_t0);
/// Extension nulls with endpoint kernels.
double variance_bound_extension(double t, std::size_t m, double a, double b, double phi_sup,
                                double omega_sup, double g_t0);

/// Closed-form Gaussian upper bounds, sigma = scale.
double gaussian_variance_bound_bounded(double t, std::size_t m, double a, double b,
                                       double omega_sup, double sigma);
double gaussian_variance_bound_onesided(double t, std::size_t m, double mean_mu_sq,
                                        double omega_sup, double sigma);

}  // namespace propest
