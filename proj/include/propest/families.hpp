#pragma once

// Type I location-shift families: families whose base characteristic
// function is real, even, strictly positive and therefore equal to its own
// modulus r0. Every kernel in the library divides by r0, so the quantities
// exposed here are r0, its reciprocal, and the scaled s-derivative used by
// the one-sided construction.

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "propest/quadrature.hpp"

namespace propest {

enum class FamilyKind { Gaussian, Laplace, Logistic, HyperbolicSecant, Cauchy };

class LocationShiftFamily {
public:
    /// Throws InvalidConfig unless scale is finite and positive.
    LocationShiftFamily(FamilyKind kind, double scale);

    /// Parses "gaussian", "laplace", "logistic", "hsecant" or "cauchy".
    static LocationShiftFamily from_id(std::string_view id, double scale);

    FamilyKind kind() const noexcept { return kind_; }
    double scale() const noexcept { return scale_; }
    std::string id() const;

    /// False only for Cauchy, whose first absolute moment is infinite.
    bool has_finite_first_moment() const noexcept { return kind_ != FamilyKind::Cauchy; }

    /// Variance of a member, or +inf for Cauchy.
    double variance() const noexcept;

    /// r0(t), the CF modulus of the member centred at zero.
    double modulus_cf(double t) const noexcept;

    /// 1 / r0(t), evaluated directly to avoid underflow of r0 for large |t|.
    double recip_modulus(double t) const noexcept;

    /// (1/y) d/ds [1 / r0(t y s)], in closed form per family.
    /// Throws UnsupportedFamily for Cauchy.
    double recip_cf_sderiv_over_y(double t, double y, double s) const;

    double density(double mu, double x) const noexcept;
    double cdf(double mu, double x) const noexcept;

    /// Inverse CDF of F_mu; u must lie in (0, 1).
    double quantile(double mu, double u) const noexcept;

    /// One draw from F_mu using the caller's engine.
    double draw(double mu, std::mt19937_64& engine) const;

    /// n independent draws from F_mu; identical output for identical seed.
    std::vector<double> sample(double mu, std::size_t n, std::uint64_t seed) const;

    /// g(t, 0) = integral over [-1, 1] of ds / r0(t s), by Riemann sum.
    double avg_recip_modulus(double t, const QuadratureConfig& quad = {}) const;

private:
    FamilyKind kind_;
    double scale_;
};

/// Uniform variate on the open interval (0, 1) from 53 random bits.
double open_unit_uniform(std::mt19937_64& engine) noexcept;

}  // namespace propest
