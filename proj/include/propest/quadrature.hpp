#pragma once

// Equal-cell Riemann sums. Every integral in the kernels goes through the
// same partition rule: ceil((b - a) / norm) equal cells, one node per cell.

#include <cstddef>
#include <functional>
#include <string_view>
#include <vector>

namespace propest {

enum class RiemannRule { Midpoint, LeftEndpoint };

struct QuadratureConfig {
    double norm = 0.01;
    RiemannRule rule = RiemannRule::Midpoint;

    /// Throws InvalidConfig unless norm is finite and positive.
    void validate() const;
};

/// Parses "midpoint" or "left".
RiemannRule parse_rule(std::string_view name);
std::string_view rule_name(RiemannRule rule) noexcept;

/// Node set of one axis. Nodes are x_k = a + (k + offset) * width, so they
/// form an arithmetic progression that callers may walk by rotation.
class UniformGrid {
public:
    UniformGrid(double a, double b, const QuadratureConfig& config);

    double lower() const noexcept { return a_; }
    double upper() const noexcept { return b_; }
    std::size_t size() const noexcept { return nodes_.size(); }
    double width() const noexcept { return width_; }
    double first() const noexcept { return nodes_.empty() ? a_ : nodes_.front(); }
    double operator[](std::size_t k) const noexcept { return nodes_[k]; }
    const std::vector<double>& nodes() const noexcept { return nodes_; }

    /// Number of cells for an interval of the given length.
    static std::size_t cell_count(double length, double norm);

private:
    double a_;
    double b_;
    double width_;
    std::vector<double> nodes_;
};

/// Riemann sum of f over [a, b]; returns 0 when a == b.
/// Throws NonFiniteIntegrand if f is non-finite at any node.
double integrate_1d(const std::function<double(double)>& f, double a, double b,
                    const QuadratureConfig& config = {});

struct Box {
    double a1, b1;  // outer axis
    double a2, b2;  // inner axis
};

/// Iterated Riemann sum: outer axis [a1, b1], inner axis [a2, b2], both per
/// config. f is called as f(outer, inner).
double integrate_2d(const std::function<double(double, double)>& f, const Box& box,
                    const QuadratureConfig& config = {});

}  // namespace propest
