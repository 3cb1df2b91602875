#include "propest/simharness.hpp"

#include <cmath>
#include <string>

#include "propest/baselines.hpp"
#include "propest/errors.hpp"
#include "propest/estimators.hpp"
#include "propest/families.hpp"
#include "propest/summation.hpp"

namespace propest {

namespace {

double uniform(std::mt19937_64& engine, double lo, double hi) {
    return lo + (hi - lo) * open_unit_uniform(engine);
}

std::size_t floor_count(double x) {
    return x <= 0.0 ? 0 : static_cast<std::size_t>(std::floor(x + 1e-9));
}

}  // namespace

Scenario parse_scenario(std::string_view s) {
    if (s == "1") return Scenario::S1_Bounded;
    if (s == "2") return Scenario::S2_OneSided;
    if (s == "3") return Scenario::S3_Trunc2Norm;
    throw InvalidConfig("unknown scenario '" + std::string(s) + "' (expected 1|2|3)");
}

Sparsity parse_sparsity(std::string_view s) {
    if (s == "dense") return Sparsity::Dense;
    if (s == "moderate") return Sparsity::Moderate;
    throw InvalidConfig("unknown sparsity '" + std::string(s) + "' (expected dense|moderate)");
}

EstimatorId parse_estimator(std::string_view s) {
    if (s == "new") return EstimatorId::New;
    if (s == "mr") return EstimatorId::MR;
    if (s == "storey") return EstimatorId::Storey;
    throw InvalidConfig("unknown estimator '" + std::string(s) + "' (expected new|mr|storey)");
}

std::string_view sparsity_name(Sparsity s) noexcept {
    return s == Sparsity::Dense ? "dense" : "moderate";
}

std::string_view estimator_name(EstimatorId e) noexcept {
    switch (e) {
        case EstimatorId::New: return "new";
        case EstimatorId::MR: return "mr";
        case EstimatorId::Storey: return "storey";
    }
    return "unknown";
}

void ScenarioConfig::validate() const {
    if (m < 16) throw InvalidConfig("scenarios need m >= 16 so that ln ln m > 1");
    if (reps == 0) throw InvalidConfig("reps must be positive");
    if (estimators.empty()) throw InvalidConfig("no estimators requested");
    if (!std::isfinite(gamma) || gamma <= 0.0) throw InvalidConfig("gamma must be positive");
    quad.validate();
    for (EstimatorId e : estimators) {
        if (e != EstimatorId::New && scenario != Scenario::S2_OneSided) {
            throw InvalidConfig("p-value baselines are only defined for scenario 2");
        }
    }
    if (!(storey_lambda > 0.0 && storey_lambda < 1.0)) {
        throw InvalidLambda("lambda must lie in (0, 1)");
    }
}

double ScenarioConfig::u_m() const {
    return 1.0 / std::log(std::log(static_cast<double>(m)));
}

double ScenarioConfig::pi1() const {
    return sparsity == Sparsity::Dense ? 0.2 : u_m();
}

std::uint64_t rep_seed(std::uint64_t master, std::uint64_t rep) noexcept {
    std::uint64_t z = master + (rep + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

NullSpec scenario_null(Scenario s) {
    switch (s) {
        case Scenario::S1_Bounded: return NullSpec::bounded_open(-1.0, 2.0);
        case Scenario::S2_OneSided: return NullSpec::one_sided_open(0.0);
        case Scenario::S3_Trunc2Norm:
            return NullSpec::extension(truncated_square(2.0), -2.0, 2.0, ExtensionBoundary::None);
    }
    throw InvalidConfig("unknown scenario");
}

GeneratedMeans generate_means(const ScenarioConfig& config, std::mt19937_64& engine) {
    const std::size_t m = config.m;
    const double md = static_cast<double>(m);
    const double lnln = std::log(std::log(md));
    const double u = 1.0 / lnln;
    const std::size_t m1 = floor_count(config.pi1() * md);
    if (m1 > m) throw InvalidConfig("alternative count exceeds m");
    const std::size_t m0 = m - m1;

    GeneratedMeans out;
    out.mu.reserve(m);
    auto push_uniform = [&](std::size_t n, double lo, double hi) {
        for (std::size_t i = 0; i < n; ++i) out.mu.push_back(uniform(engine, lo, hi));
    };
    auto push_const = [&](std::size_t n, double v) { out.mu.insert(out.mu.end(), n, v); };

    switch (config.scenario) {
        case Scenario::S1_Bounded: {
            const double a = -1.0, b = 2.0;
            const long long half = static_cast<long long>(m1 / 2);
            const long long shift = static_cast<long long>(std::floor(md / lnln));
            const std::size_t m11 = static_cast<std::size_t>(std::max(1LL, half - shift));
            if (2 * m11 > m1) throw InvalidConfig("scenario 1 needs at least two alternatives");
            const std::size_t rest = m1 - 2 * m11;
            push_uniform(m0, a + u, b - u);
            push_uniform(m11, b + u, b + 6.0);
            push_uniform(m11, a - 4.0, a - u);
            push_const(rest / 2, a);
            push_const(rest - rest / 2, b);
            out.target = static_cast<double>(m1) / md;
            break;
        }
        case Scenario::S2_OneSided: {
            const double b = 0.0;
            const std::size_t up = floor_count(0.9 * static_cast<double>(m1));
            push_uniform(m0, -4.0, b - u);
            push_uniform(up, b + u, b + 6.0);
            push_const(m1 - up, b);
            out.target = static_cast<double>(m1) / md;
            break;
        }
        case Scenario::S3_Trunc2Norm: {
            const double a = -2.0, b = 2.0;
            const std::size_t up = m1 / 2;
            push_uniform(m0, a, b);
            push_uniform(up, b + u, b + 6.0);
            push_uniform(m1 - up, b - 4.0, b - u);
            const auto phi = truncated_square(2.0);
            CompensatedSum s;
            for (double mu : out.mu) {
                if (mu >= a && mu <= b) s.add(phi(mu));
            }
            out.target = s.value() / md;
            break;
        }
    }
    return out;
}

GeneratedMeans generate_means(const ScenarioConfig& config, std::uint64_t seed) {
    std::mt19937_64 engine(seed);
    return generate_means(config, engine);
}

std::pair<double, double> mean_sd(const std::vector<double>& v) {
    if (v.empty()) return {0.0, 0.0};
    CompensatedSum s;
    for (double x : v) s.add(x);
    const double mean = s.value() / static_cast<double>(v.size());
    if (v.size() < 2) return {mean, 0.0};
    CompensatedSum q;
    for (double x : v) q.add((x - mean) * (x - mean));
    return {mean, std::sqrt(q.value() / static_cast<double>(v.size() - 1))};
}

SimulationReport run(const ScenarioConfig& config) {
    config.validate();
    const LocationShiftFamily family(FamilyKind::Gaussian, 1.0);
    const KernelPair pair(scenario_null(config.scenario), ModulusView::of(family), config.omega,
                          config.quad);
    const double t = default_speed(config.m, config.gamma);
    const KernelAtT kernel = pair.at(t);

    SimulationReport report;
    report.config = config;
    report.t_used = t;
    report.series.resize(config.estimators.size());
    for (std::size_t e = 0; e < config.estimators.size(); ++e) {
        report.series[e].id = config.estimators[e];
        report.series[e].excess.assign(config.reps, 0.0);
    }

    parallel_for(config.reps, config.threads, [&](std::size_t rep) {
        std::mt19937_64 engine(rep_seed(config.seed, rep));
        const GeneratedMeans gm = generate_means(config, engine);
        if (!(gm.target > 0.0)) throw InvalidConfig("scenario target is zero");
        std::vector<double> z(gm.mu.size());
        for (std::size_t i = 0; i < z.size(); ++i) z[i] = family.draw(gm.mu[i], engine);

        std::vector<double> pvals;
        for (std::size_t e = 0; e < config.estimators.size(); ++e) {
            double value = 0.0;
            switch (config.estimators[e]) {
                case EstimatorId::New: {
                    const EstimateResult r = estimate(z, kernel, 1);
                    value = pair.null().is_extension() ? r.pi0_hat : r.pi1_hat;
                    break;
                }
                case EstimatorId::MR:
                case EstimatorId::Storey: {
                    if (pvals.empty()) pvals = one_sided_pvalues(z, 0.0, family);
                    const PValueVector pv(pvals);
                    value = config.estimators[e] == EstimatorId::MR
                                ? mr_estimate(pv)
                                : storey_estimate(pv, config.storey_lambda);
                    break;
                }
            }
            report.series[e].excess[rep] = value / gm.target - 1.0;
        }
    });

    for (auto& s : report.series) {
        const auto [mean, sd] = mean_sd(s.excess);
        s.mean = mean;
        s.sd = sd;
    }
    return report;
}

}  // namespace propest
