#pragma once

// Simulation scenarios for the proportion estimators: means are drawn per
// replication, observations are N(mu_i, 1), and each estimator is scored by
// its excess estimate / target - 1.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "propest/kernels.hpp"
#include "propest/quadrature.hpp"

namespace propest {

enum class Scenario { S1_Bounded = 1, S2_OneSided = 2, S3_Trunc2Norm = 3 };
enum class Sparsity { Dense, Moderate };
enum class EstimatorId { New, MR, Storey };

Scenario parse_scenario(std::string_view s);
Sparsity parse_sparsity(std::string_view s);
EstimatorId parse_estimator(std::string_view s);
std::string_view sparsity_name(Sparsity s) noexcept;
std::string_view estimator_name(EstimatorId e) noexcept;

struct ScenarioConfig {
    Scenario scenario = Scenario::S1_Bounded;
    std::size_t m = 1000;
    Sparsity sparsity = Sparsity::Dense;
    std::size_t reps = 200;
    std::uint64_t seed = 0;
    double gamma = 0.495;
    QuadratureConfig quad;
    OmegaDensity omega;
    std::vector<EstimatorId> estimators{EstimatorId::New};
    double storey_lambda = 0.5;
    unsigned threads = 1;

    /// Throws InvalidConfig: m < 16, reps = 0, empty estimator list, or a
    /// p-value baseline requested outside scenario 2.
    void validate() const;
    /// Configured alternative proportion: 0.2 or 1 / ln ln m.
    double pi1() const;
    /// 1 / ln ln m.
    double u_m() const;
};

struct GeneratedMeans {
    std::vector<double> mu;
    /// pi_1 for scenarios 1 and 2; the phi-weighted null mass for scenario 3.
    double target = 0.0;
};

/// Draws the means of one replication from `engine`.
GeneratedMeans generate_means(const ScenarioConfig& config, std::mt19937_64& engine);
/// Same, from a fresh engine seeded with rep_seed.
GeneratedMeans generate_means(const ScenarioConfig& config, std::uint64_t rep_seed);

/// Seed of replication `rep`, split from the master seed (SplitMix64).
std::uint64_t rep_seed(std::uint64_t master, std::uint64_t rep) noexcept;

/// Null, weight and kernel used by the New estimator in a scenario.
NullSpec scenario_null(Scenario s);

struct EstimatorSeries {
    EstimatorId id = EstimatorId::New;
    std::vector<double> excess;
    double mean = 0.0;
    double sd = 0.0;
};

struct SimulationReport {
    ScenarioConfig config;
    double t_used = 0.0;
    std::vector<EstimatorSeries> series;
};

SimulationReport run(const ScenarioConfig& config);

/// Mean and sample standard deviation (n - 1 denominator; 0 when n < 2).
std::pair<double, double> mean_sd(const std::vector<double>& v);

}  // namespace propest
