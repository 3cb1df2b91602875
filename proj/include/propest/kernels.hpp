#pragma once

// Matching functions K and discriminant functions psi. For every supported
// null, E K(t, Z_mu) = psi(t, mu) when Z_mu ~ F_mu, and psi(t, .) tends to
// the (weighted) indicator of the null set as t grows.

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "propest/families.hpp"
#include "propest/quadrature.hpp"

namespace propest {

enum class OmegaKind { Triangular, Uniform };

/// Even probability density on [-1, 1] used by the point-null kernel.
struct OmegaDensity {
    OmegaKind kind = OmegaKind::Triangular;

    double operator()(double s) const noexcept;
    double sup_norm() const noexcept;
    double total_variation() const noexcept;
    /// Integral of omega(s) cos(u s) over [-1, 1], in closed form.
    double fourier(double u) const noexcept;

    static OmegaDensity parse(std::string_view name);
    std::string_view name() const noexcept;
};

enum class NullKind { Point, BoundedOpen, BoundedClosed, OneSidedOpen, OneSidedClosed, Extension };

/// How the endpoint kernels enter an extension null.
enum class ExtensionBoundary { None, Open, Closed };

struct NullSpec {
    NullKind kind = NullKind::Point;
    double mu0 = 0.0;
    double a = 0.0;
    double b = 0.0;
    std::function<double(double)> phi;
    double phi_a = 0.0;
    double phi_b = 0.0;
    ExtensionBoundary boundary = ExtensionBoundary::None;

    static NullSpec point(double mu0);
    static NullSpec bounded_open(double a, double b);
    static NullSpec bounded_closed(double a, double b);
    static NullSpec one_sided_open(double b);
    static NullSpec one_sided_closed(double b);
    static NullSpec extension(std::function<double(double)> phi, double a, double b,
                              ExtensionBoundary boundary = ExtensionBoundary::None);

    bool is_extension() const noexcept { return kind == NullKind::Extension; }
    /// Throws InvalidNull for non-finite bounds or a >= b.
    void validate() const;
    std::string summary() const;
};

/// phi(y) = y^2 on [-c, c], zero outside.
std::function<double(double)> truncated_square(double c);

/// The parts of a family the kernels need. Built from a LocationShiftFamily,
/// or from plain callables so tests can use a degenerate r0 == 1 stub.
struct ModulusView {
    std::string id;
    bool finite_first_moment = true;
    std::function<double(double)> recip;
    std::function<double(double, double, double)> sderiv_over_y;

    static ModulusView of(const LocationShiftFamily& family);
    static ModulusView unit();
};

class KernelPair;

/// Kernel tables frozen at one t. Evaluating K at an observation costs
/// O(cells) for point and bounded nulls and O(cells^2) for one-sided nulls.
class KernelAtT {
public:
    double t() const noexcept { return t_; }
    /// The pair these tables were built from; it must outlive this object.
    const KernelPair& pair() const noexcept { return *pair_; }

    /// Composed K(t, x) of the owning pair.
    double k(double x) const;
    /// K_1(t, x): bounded, one-sided (at x - b) or extension part.
    double k1(double x) const;
    /// K_{1,0}(t, x; mu_prime).
    double k10(double x, double mu_prime) const;

private:
    friend class KernelPair;
    KernelAtT() = default;

    double bounded_k1(double x) const;
    double onesided_k1(double x) const;

    const KernelPair* pair_ = nullptr;
    double t_ = 0.0;
    bool zero_ = false;

    // s-axis on [0, 1]
    double s0_ = 0.0;
    double hs_ = 0.0;
    std::size_t ns_ = 0;
    std::vector<double> point_coef_;  // omega(s_k) / r0(t s_k)

    // bounded and extension: R_k C_k and R_k S_k
    std::vector<double> cos_coef_;
    std::vector<double> sin_coef_;
    double bounded_scale_ = 0.0;

    // one-sided, k-major: t / r0(t y_j s_k) and (1/y) d/ds [1 / r0(t y_j s_k)]
    std::vector<double> ys_;
    std::vector<double> os_cos_;
    std::vector<double> os_sin_;
    double onesided_scale_ = 0.0;
};

class KernelPair {
public:
    /// Throws InvalidNull for a malformed null and UnsupportedFamily for a
    /// one-sided null over a family without a finite first moment.
    KernelPair(NullSpec null, ModulusView modulus, OmegaDensity omega = {},
               QuadratureConfig quad = {});

    KernelAtT at(double t) const;

    double eval_k(double t, double x) const { return at(t).k(x); }
    double eval_psi(double t, double mu) const;
    /// psi of the K_1 part alone.
    double psi1(double t, double mu) const;

    const NullSpec& null() const noexcept { return null_; }
    const ModulusView& modulus() const noexcept { return modulus_; }
    const OmegaDensity& omega() const noexcept { return omega_; }
    const QuadratureConfig& quad() const noexcept { return quad_; }

private:
    friend class KernelAtT;
    NullSpec null_;
    ModulusView modulus_;
    OmegaDensity omega_;
    QuadratureConfig quad_;
};

KernelPair compose(const NullSpec& null, const LocationShiftFamily& family,
                   const OmegaDensity& omega = {}, const QuadratureConfig& quad = {});

double k_point(const KernelPair& pair, double t, double x, double mu_prime);
double psi_point(const OmegaDensity& omega, double t, double mu, double mu_prime);

double k_bounded(const KernelPair& pair, double t, double x);
double psi_bounded(double t, double mu, double a, double b);

/// K_1 of a one-sided null at x - b.
double k_onesided(const KernelPair& pair, double t, double x);
double psi_onesided(double t, double mu);

double k_extension(const KernelPair& pair, double t, double x);
double psi_extension(double t, double mu, const std::function<double(double)>& phi, double a,
                     double b, const QuadratureConfig& quad = {});

}  // namespace propest
