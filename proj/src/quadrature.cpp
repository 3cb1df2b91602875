#include "propest/quadrature.hpp"

#include <cmath>
#include <string>

#include "propest/errors.hpp"

namespace propest {

void QuadratureConfig::validate() const {
    if (!std::isfinite(norm) || norm <= 0.0) {
        throw InvalidConfig("quadrature norm must be finite and positive, got " +
                            std::to_string(norm));
    }
}

RiemannRule parse_rule(std::string_view name) {
    if (name == "midpoint") return RiemannRule::Midpoint;
    if (name == "left") return RiemannRule::LeftEndpoint;
    throw InvalidConfig("unknown quadrature rule '" + std::string(name) +
                        "' (expected midpoint|left)");
}

std::string_view rule_name(RiemannRule rule) noexcept {
    return rule == RiemannRule::Midpoint ? "midpoint" : "left";
}

std::size_t UniformGrid::cell_count(double length, double norm) {
    if (length <= 0.0) return 0;
    // (b - a) / norm is often an integer up to rounding (3 / 0.01 = 300.00000000000006).
    const double ratio = length / norm;
    const double cells = std::ceil(ratio - 1e-9 * std::max(1.0, ratio));
    return cells < 1.0 ? 1 : static_cast<std::size_t>(cells);
}

UniformGrid::UniformGrid(double a, double b, const QuadratureConfig& config) : a_(a), b_(b) {
    config.validate();
    if (!(a <= b) || !std::isfinite(a) || !std::isfinite(b)) {
        throw InvalidConfig("integration bounds must be finite with a <= b");
    }
    const std::size_t n = cell_count(b - a, config.norm);
    width_ = n == 0 ? 0.0 : (b - a) / static_cast<double>(n);
    const double offset = config.rule == RiemannRule::Midpoint ? 0.5 : 0.0;
    nodes_.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        nodes_.push_back(a + (static_cast<double>(k) + offset) * width_);
    }
}

double integrate_1d(const std::function<double(double)>& f, double a, double b,
                    const QuadratureConfig& config) {
    const UniformGrid grid(a, b, config);
    double sum = 0.0;
    for (double x : grid.nodes()) {
        const double v = f(x);
        if (!std::isfinite(v)) {
            throw NonFiniteIntegrand("integrand is not finite at x = " + std::to_string(x));
        }
        sum += v;
    }
    return sum * grid.width();
}

double integrate_2d(const std::function<double(double, double)>& f, const Box& box,
                    const QuadratureConfig& config) {
    const UniformGrid inner(box.a2, box.b2, config);
    return integrate_1d(
        [&](double outer) {
            double sum = 0.0;
            for (double x : inner.nodes()) {
                const double v = f(outer, x);
                if (!std::isfinite(v)) {
                    throw NonFiniteIntegrand("integrand is not finite at (" +
                                             std::to_string(outer) + ", " + std::to_string(x) +
                                             ")");
                }
                sum += v;
            }
            return sum * inner.width();
        },
        box.a1, box.b1, config);
}

}  // namespace propest
