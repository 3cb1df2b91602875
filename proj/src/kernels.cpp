#include "propest/kernels.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>

#include "propest/errors.hpp"
#include "propest/oracles.hpp"

namespace propest {

namespace {

constexpr double kInvPi = std::numbers::inv_pi;
// Steps between exact re-evaluations of the rotating phasor.
constexpr std::size_t kResync = 64;

// sum_k c_k cos(theta s_k) + d_k sin(theta s_k) with s_k = s0 + k h.
// d may be null.
double rotation_sum(const double* c, const double* d, std::size_t n, double theta, double s0,
                    double h) {
    const double step_re = std::cos(theta * h);
    const double step_im = std::sin(theta * h);
    double re = 0.0, im = 0.0;
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        if (k % kResync == 0) {
            const double ang = theta * (s0 + static_cast<double>(k) * h);
            re = std::cos(ang);
            im = std::sin(ang);
        }
        acc += c[k] * re;
        if (d) acc += d[k] * im;
        const double nre = re * step_re - im * step_im;
        im = re * step_im + im * step_re;
        re = nre;
    }
    return acc;
}

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) {
        throw NonFiniteIntegrand(std::string(what) + " is not finite on the quadrature grid");
    }
}

}  // namespace

// ---------------------------------------------------------------- omega

double OmegaDensity::operator()(double s) const noexcept {
    const double as = std::abs(s);
    if (as > 1.0) return 0.0;
    return kind == OmegaKind::Triangular ? 1.0 - as : 0.5;
}

double OmegaDensity::sup_norm() const noexcept {
    return kind == OmegaKind::Triangular ? 1.0 : 0.5;
}

double OmegaDensity::total_variation() const noexcept {
    return kind == OmegaKind::Triangular ? 2.0 : 1.0;
}

double OmegaDensity::fourier(double u) const noexcept {
    const double au = std::abs(u);
    if (kind == OmegaKind::Triangular) {
        if (au < 1e-4) return 1.0 - au * au / 12.0;
        const double h = std::sin(0.5 * au) / au;
        return 4.0 * h * h;
    }
    if (au < 1e-4) return 1.0 - au * au / 6.0;
    return std::sin(au) / au;
}

OmegaDensity OmegaDensity::parse(std::string_view name) {
    if (name == "triangular") return {OmegaKind::Triangular};
    if (name == "uniform") return {OmegaKind::Uniform};
    throw InvalidConfig("unknown omega '" + std::string(name) + "' (expected triangular|uniform)");
}

std::string_view OmegaDensity::name() const noexcept {
    return kind == OmegaKind::Triangular ? "triangular" : "uniform";
}

// ---------------------------------------------------------------- nulls

NullSpec NullSpec::point(double mu0) {
    NullSpec n;
    n.kind = NullKind::Point;
    n.mu0 = mu0;
    return n;
}

NullSpec NullSpec::bounded_open(double a, double b) {
    NullSpec n;
    n.kind = NullKind::BoundedOpen;
    n.a = a;
    n.b = b;
    return n;
}

NullSpec NullSpec::bounded_closed(double a, double b) {
    NullSpec n = bounded_open(a, b);
    n.kind = NullKind::BoundedClosed;
    return n;
}

NullSpec NullSpec::one_sided_open(double b) {
    NullSpec n;
    n.kind = NullKind::OneSidedOpen;
    n.b = b;
    return n;
}

NullSpec NullSpec::one_sided_closed(double b) {
    NullSpec n = one_sided_open(b);
    n.kind = NullKind::OneSidedClosed;
    return n;
}

NullSpec NullSpec::extension(std::function<double(double)> phi, double a, double b,
                             ExtensionBoundary boundary) {
    if (!phi) throw InvalidNull("extension null needs a weight function");
    NullSpec n;
    n.kind = NullKind::Extension;
    n.a = a;
    n.b = b;
    n.phi_a = phi(a);
    n.phi_b = phi(b);
    n.phi = std::move(phi);
    n.boundary = boundary;
    return n;
}

void NullSpec::validate() const {
    switch (kind) {
        case NullKind::Point:
            if (!std::isfinite(mu0)) throw InvalidNull("point null needs a finite mu0");
            return;
        case NullKind::OneSidedOpen:
        case NullKind::OneSidedClosed:
            if (!std::isfinite(b)) throw InvalidNull("one-sided null needs a finite b");
            return;
        case NullKind::Extension:
            if (!phi) throw InvalidNull("extension null needs a weight function");
            [[fallthrough]];
        case NullKind::BoundedOpen:
        case NullKind::BoundedClosed:
            if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
                throw InvalidNull("bounded null needs finite a < b");
            }
            return;
    }
}

std::string NullSpec::summary() const {
    std::ostringstream os;
    os.precision(17);
    switch (kind) {
        case NullKind::Point: os << "point(" << mu0 << ")"; break;
        case NullKind::BoundedOpen: os << "bounded(" << a << "," << b << ")"; break;
        case NullKind::BoundedClosed: os << "bounded-closed[" << a << "," << b << "]"; break;
        case NullKind::OneSidedOpen: os << "one-sided(-inf," << b << ")"; break;
        case NullKind::OneSidedClosed: os << "one-sided-closed(-inf," << b << "]"; break;
        case NullKind::Extension: {
            const char* tag = boundary == ExtensionBoundary::None   ? "k1"
                              : boundary == ExtensionBoundary::Open ? "open"
                                                                    : "closed";
            os << "extension-" << tag << "[" << a << "," << b << "]";
            break;
        }
    }
    return os.str();
}

std::function<double(double)> truncated_square(double c) {
    return [c](double y) { return std::abs(y) <= c ? y * y : 0.0; };
}

ModulusView ModulusView::of(const LocationShiftFamily& family) {
    ModulusView v;
    v.id = family.id();
    v.finite_first_moment = family.has_finite_first_moment();
    v.recip = [family](double t) { return family.recip_modulus(t); };
    if (v.finite_first_moment) {
        v.sderiv_over_y = [family](double t, double y, double s) {
            return family.recip_cf_sderiv_over_y(t, y, s);
        };
    }
    return v;
}

ModulusView ModulusView::unit() {
    ModulusView v;
    v.id = "unit";
    v.recip = [](double) { return 1.0; };
    v.sderiv_over_y = [](double, double, double) { return 0.0; };
    return v;
}

// ---------------------------------------------------------------- pair

KernelPair::KernelPair(NullSpec null, ModulusView modulus, OmegaDensity omega,
                       QuadratureConfig quad)
    : null_(std::move(null)), modulus_(std::move(modulus)), omega_(omega), quad_(quad) {
    null_.validate();
    quad_.validate();
    if (!modulus_.recip) throw InvalidConfig("modulus view has no reciprocal modulus");
    const bool one_sided =
        null_.kind == NullKind::OneSidedOpen || null_.kind == NullKind::OneSidedClosed;
    if (one_sided && (!modulus_.finite_first_moment || !modulus_.sderiv_over_y)) {
        throw UnsupportedFamily("family '" + modulus_.id +
                                "' has no finite first moment; one-sided nulls are unsupported");
    }
}

KernelAtT KernelPair::at(double t) const {
    if (!std::isfinite(t) || t < 0.0) throw InvalidConfig("t must be finite and nonnegative");
    KernelAtT kt;
    kt.pair_ = this;
    kt.t_ = t;
    if (t == 0.0) {
        kt.zero_ = true;
        return kt;
    }

    const UniformGrid sg(0.0, 1.0, quad_);
    kt.s0_ = sg.first();
    kt.hs_ = sg.width();
    kt.ns_ = sg.size();
    std::vector<double> recip(kt.ns_);
    kt.point_coef_.resize(kt.ns_);
    for (std::size_t k = 0; k < kt.ns_; ++k) {
        recip[k] = modulus_.recip(t * sg[k]);
        require_finite(recip[k], "1/r0");
        kt.point_coef_[k] = 2.0 * sg.width() * omega_(sg[k]) * recip[k];
    }

    switch (null_.kind) {
        case NullKind::Point: break;
        case NullKind::BoundedOpen:
        case NullKind::BoundedClosed:
        case NullKind::Extension: {
            const UniformGrid yg(null_.a, null_.b, quad_);
            std::vector<double> phi(yg.size(), 1.0);
            if (null_.kind == NullKind::Extension) {
                for (std::size_t j = 0; j < yg.size(); ++j) {
                    phi[j] = null_.phi(yg[j]);
                    require_finite(phi[j], "phi");
                }
            }
            // cos(ts(x - y)) = cos(tsx) cos(tsy) + sin(tsx) sin(tsy); the y-sums
            // do not depend on x.
            kt.cos_coef_.assign(kt.ns_, 0.0);
            kt.sin_coef_.assign(kt.ns_, 0.0);
            for (std::size_t k = 0; k < kt.ns_; ++k) {
                double c = 0.0, s = 0.0;
                for (std::size_t j = 0; j < yg.size(); ++j) {
                    const double ang = t * sg[k] * yg[j];
                    c += phi[j] * std::cos(ang);
                    s += phi[j] * std::sin(ang);
                }
                kt.cos_coef_[k] = recip[k] * c;
                kt.sin_coef_[k] = recip[k] * s;
            }
            kt.bounded_scale_ = t * kInvPi * yg.width() * sg.width();
            break;
        }
        case NullKind::OneSidedOpen:
        case NullKind::OneSidedClosed: {
            const UniformGrid yg(0.0, 1.0, quad_);
            const std::size_t ny = yg.size();
            kt.ys_ = yg.nodes();
            kt.os_cos_.resize(kt.ns_ * ny);
            kt.os_sin_.resize(kt.ns_ * ny);
            for (std::size_t k = 0; k < kt.ns_; ++k) {
                for (std::size_t j = 0; j < ny; ++j) {
                    const double c = t * modulus_.recip(t * yg[j] * sg[k]);
                    const double d = modulus_.sderiv_over_y(t, yg[j], sg[k]);
                    require_finite(c, "1/r0");
                    require_finite(d, "s-derivative of 1/r0");
                    kt.os_cos_[k * ny + j] = c;
                    kt.os_sin_[k * ny + j] = d;
                }
            }
            kt.onesided_scale_ = kInvPi * yg.width() * sg.width();
            break;
        }
    }
    return kt;
}

double KernelPair::psi1(double t, double mu) const {
    switch (null_.kind) {
        case NullKind::Point: return psi_point(omega_, t, mu, null_.mu0);
        case NullKind::BoundedOpen:
        case NullKind::BoundedClosed: return psi_bounded(t, mu, null_.a, null_.b);
        case NullKind::OneSidedOpen:
        case NullKind::OneSidedClosed: return psi_onesided(t, mu - null_.b);
        case NullKind::Extension: return psi_extension(t, mu, null_.phi, null_.a, null_.b, quad_);
    }
    return 0.0;
}

double KernelPair::eval_psi(double t, double mu) const {
    const NullSpec& n = null_;
    const double p1 = psi1(t, mu);
    switch (n.kind) {
        case NullKind::Point: return p1;
        case NullKind::BoundedOpen:
        case NullKind::BoundedClosed: {
            const double ends = psi_point(omega_, t, mu, n.a) + psi_point(omega_, t, mu, n.b);
            return n.kind == NullKind::BoundedOpen ? p1 - 0.5 * ends : p1 + 0.5 * ends;
        }
        case NullKind::OneSidedOpen:
        case NullKind::OneSidedClosed: {
            const double at_b = psi_point(omega_, t, mu - n.b, 0.0);
            return n.kind == NullKind::OneSidedOpen ? 0.5 - p1 - 0.5 * at_b
                                                    : 0.5 - p1 + 0.5 * at_b;
        }
        case NullKind::Extension: {
            if (n.boundary == ExtensionBoundary::None) return p1;
            const double ends = n.phi_a * psi_point(omega_, t, mu, n.a) +
                                n.phi_b * psi_point(omega_, t, mu, n.b);
            return n.boundary == ExtensionBoundary::Open ? p1 - 0.5 * ends : p1 + 0.5 * ends;
        }
    }
    return 0.0;
}

// ---------------------------------------------------------------- at t

double KernelAtT::k10(double x, double mu_prime) const {
    if (zero_) return 1.0;
    return rotation_sum(point_coef_.data(), nullptr, ns_, t_ * (x - mu_prime), s0_, hs_);
}

double KernelAtT::bounded_k1(double x) const {
    return bounded_scale_ *
           rotation_sum(cos_coef_.data(), sin_coef_.data(), ns_, t_ * x, s0_, hs_);
}

double KernelAtT::onesided_k1(double x) const {
    if (x == 0.0) return 0.0;
    const std::size_t ny = ys_.size();
    thread_local std::vector<double> theta, re, im, sre, sim, acc;
    theta.resize(ny);
    re.resize(ny);
    im.resize(ny);
    sre.resize(ny);
    sim.resize(ny);
    acc.assign(ny, 0.0);
    for (std::size_t j = 0; j < ny; ++j) {
        theta[j] = t_ * ys_[j] * x;
        sre[j] = std::cos(theta[j] * hs_);
        sim[j] = std::sin(theta[j] * hs_);
    }
    for (std::size_t k = 0; k < ns_; ++k) {
        if (k % kResync == 0) {
            const double s = s0_ + static_cast<double>(k) * hs_;
            for (std::size_t j = 0; j < ny; ++j) {
                re[j] = std::cos(theta[j] * s);
                im[j] = std::sin(theta[j] * s);
            }
        }
        const double* c = os_cos_.data() + k * ny;
        const double* d = os_sin_.data() + k * ny;
        for (std::size_t j = 0; j < ny; ++j) {
            acc[j] += x * c[j] * re[j] + d[j] * im[j];
            const double nre = re[j] * sre[j] - im[j] * sim[j];
            im[j] = re[j] * sim[j] + im[j] * sre[j];
            re[j] = nre;
        }
    }
    double total = 0.0;
    for (double v : acc) total += v;
    return onesided_scale_ * total;
}

double KernelAtT::k1(double x) const {
    if (zero_) return 0.0;
    switch (pair_->null_.kind) {
        case NullKind::Point: return 0.0;
        case NullKind::BoundedOpen:
        case NullKind::BoundedClosed:
        case NullKind::Extension: return bounded_k1(x);
        case NullKind::OneSidedOpen:
        case NullKind::OneSidedClosed: return onesided_k1(x - pair_->null_.b);
    }
    return 0.0;
}

double KernelAtT::k(double x) const {
    const NullSpec& n = pair_->null_;
    switch (n.kind) {
        case NullKind::Point: return k10(x, n.mu0);
        case NullKind::BoundedOpen:
        case NullKind::BoundedClosed: {
            const double ends = k10(x, n.a) + k10(x, n.b);
            const double p1 = k1(x);
            return n.kind == NullKind::BoundedOpen ? p1 - 0.5 * ends : p1 + 0.5 * ends;
        }
        case NullKind::OneSidedOpen:
        case NullKind::OneSidedClosed: {
            const double p1 = k1(x);
            const double at_b = k10(x - n.b, 0.0);
            return n.kind == NullKind::OneSidedOpen ? 0.5 - p1 - 0.5 * at_b
                                                    : 0.5 - p1 + 0.5 * at_b;
        }
        case NullKind::Extension: {
            const double p1 = k1(x);
            if (n.boundary == ExtensionBoundary::None) return p1;
            const double ends = n.phi_a * k10(x, n.a) + n.phi_b * k10(x, n.b);
            return n.boundary == ExtensionBoundary::Open ? p1 - 0.5 * ends : p1 + 0.5 * ends;
        }
    }
    return 0.0;
}

// ---------------------------------------------------------------- free functions

KernelPair compose(const NullSpec& null, const LocationShiftFamily& family,
                   const OmegaDensity& omega, const QuadratureConfig& quad) {
    return KernelPair(null, ModulusView::of(family), omega, quad);
}

double k_point(const KernelPair& pair, double t, double x, double mu_prime) {
    return pair.at(t).k10(x, mu_prime);
}

double psi_point(const OmegaDensity& omega, double t, double mu, double mu_prime) {
    return omega.fourier(t * (mu - mu_prime));
}

double k_bounded(const KernelPair& pair, double t, double x) {
    const NullKind k = pair.null().kind;
    if (k != NullKind::BoundedOpen && k != NullKind::BoundedClosed) {
        throw InvalidNull("k_bounded needs a bounded null");
    }
    return pair.at(t).k1(x);
}

double psi_bounded(double t, double mu, double a, double b) {
    if (t == 0.0) return 0.0;
    return kInvPi * (sine_integral((mu - a) * t) - sine_integral((mu - b) * t));
}

double k_onesided(const KernelPair& pair, double t, double x) {
    const NullKind k = pair.null().kind;
    if (k != NullKind::OneSidedOpen && k != NullKind::OneSidedClosed) {
        throw InvalidNull("k_onesided needs a one-sided null");
    }
    return pair.at(t).k1(x);
}

double psi_onesided(double t, double mu) {
    return kInvPi * sine_integral(mu * t);
}

double k_extension(const KernelPair& pair, double t, double x) {
    if (pair.null().kind != NullKind::Extension) {
        throw InvalidNull("k_extension needs an extension null");
    }
    return pair.at(t).k1(x);
}

double psi_extension(double t, double mu, const std::function<double(double)>& phi, double a,
                     double b, const QuadratureConfig& quad) {
    if (!(a < b)) throw InvalidNull("extension null needs a < b");
    if (t == 0.0) return 0.0;
    return kInvPi * integrate_1d(
                        [&](double y) {
                            const double d = mu - y;
                            if (std::abs(d) < 1e-12) return t * phi(mu);
                            return std::sin(d * t) / d * phi(y);
                        },
                        a, b, quad);
}

}  // namespace propest
