#include "propest/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "propest/errors.hpp"

namespace propest {

PValueVector::PValueVector(std::vector<double> p) : p_(std::move(p)), order_(p_.size()) {
    for (std::size_t i = 0; i < p_.size(); ++i) {
        if (!(p_[i] >= 0.0 && p_[i] <= 1.0)) {
            throw InvalidConfig("p-value " + std::to_string(i) + " is outside [0, 1]");
        }
    }
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::stable_sort(order_.begin(), order_.end(),
                     [this](std::size_t i, std::size_t j) { return p_[i] < p_[j]; });
}

double one_sided_pvalue(double x, double b, const LocationShiftFamily& family) {
    return std::clamp(1.0 - family.cdf(b, x), 0.0, 1.0);
}

std::vector<double> one_sided_pvalues(const std::vector<double>& x, double b,
                                      const LocationShiftFamily& family) {
    std::vector<double> p(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) p[i] = one_sided_pvalue(x[i], b, family);
    return p;
}

double mr_estimate(const PValueVector& p) {
    const std::size_t m = p.size();
    if (m <= 4) throw TooFewPValues("MR estimator needs m > 4, got " + std::to_string(m));
    const double md = static_cast<double>(m);
    const double bm = std::sqrt(2.0 * std::log(std::log(md))) / std::sqrt(md);
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 2; i <= m - 2; ++i) {
        const double pi = p.sorted(i - 1);
        if (pi >= 1.0) continue;  // q is -inf or undefined
        const double q =
            (static_cast<double>(i) / md - pi - bm * std::sqrt(pi * (1.0 - pi))) / (1.0 - pi);
        best = std::max(best, q);
    }
    return std::clamp(best, 0.0, 1.0);
}

double storey_estimate(const PValueVector& p, double lambda) {
    if (!(lambda > 0.0 && lambda < 1.0)) {
        throw InvalidLambda("lambda must lie in (0, 1)");
    }
    if (p.size() == 0) throw EmptyInput("no p-values");
    const auto above = std::count_if(p.values().begin(), p.values().end(),
                                     [lambda](double v) { return v > lambda; });
    const double pi0 =
        static_cast<double>(above) / ((1.0 - lambda) * static_cast<double>(p.size()));
    return 1.0 - std::clamp(pi0, 0.0, 1.0);
}

}  // namespace propest
