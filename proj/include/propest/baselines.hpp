#pragma once

#include <cstddef>
#include <vector>

#include "propest/families.hpp"

namespace propest {

/// P-values with an ascending (stable) order view.
class PValueVector {
public:
    /// Throws InvalidConfig if an entry is outside [0, 1] or NaN.
    explicit PValueVector(std::vector<double> p);

    std::size_t size() const noexcept { return p_.size(); }
    const std::vector<double>& values() const noexcept { return p_; }
    const std::vector<std::size_t>& order() const noexcept { return order_; }
    /// i-th smallest p-value, 0-based.
    double sorted(std::size_t i) const noexcept { return p_[order_[i]]; }

private:
    std::vector<double> p_;
    std::vector<std::size_t> order_;
};

/// 1 - F_b(x).
double one_sided_pvalue(double x, double b, const LocationShiftFamily& family);

std::vector<double> one_sided_pvalues(const std::vector<double>& x, double b,
                                      const LocationShiftFamily& family);

/// Lower-bound estimate of the alternative proportion from ordered p-values,
/// max over 2 <= i <= m-2 of (i/m - p_(i) - b_m sqrt(p_(i)(1 - p_(i)))) / (1 - p_(i))
/// with b_m = sqrt(2 ln ln m / m), clipped to [0, 1]. Throws TooFewPValues for m <= 4.
double mr_estimate(const PValueVector& p);

/// Fixed-lambda Storey: returns 1 - min(1, #{p > lambda} / ((1 - lambda) m)).
/// Throws InvalidLambda unless 0 < lambda < 1 and EmptyInput for m = 0.
double storey_estimate(const PValueVector& p, double lambda = 0.5);

}  // namespace propest
