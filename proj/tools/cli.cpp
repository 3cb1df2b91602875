#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <tuple>

#include "propest/baselines.hpp"
#include "propest/errors.hpp"
#include "propest/estimators.hpp"
#include "propest/families.hpp"
#include "propest/kernels.hpp"
#include "propest/simharness.hpp"
#include "propest/version.hpp"

namespace propest::cli {

namespace {

using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n\"");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n\"");
    return std::string(s.substr(b, e - b + 1));
}

std::optional<double> parse_double(const std::string& s) {
    double v = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (first != last && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) return std::nullopt;
    return v;
}

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot write '" + path + "'");
    f << text;
    if (!f) throw Error("write failed for '" + path + "'");
}

unsigned threads_from(int flag) {
    if (flag > 0) return static_cast<unsigned>(flag);
    if (const char* env = std::getenv("PROPEST_THREADS")) {
        const auto v = parse_double(trim(env));
        if (v && *v >= 1.0) return static_cast<unsigned>(*v);
    }
    return 0;
}

json manifest(const std::string& sub, const std::vector<std::string>& args,
              std::optional<std::uint64_t> seed, Clock::time_point start) {
    json j;
    j["subcommand"] = sub;
    j["args"] = std::vector<std::string>(args.begin() + (args.empty() ? 0 : 1), args.end());
    j["seed"] = seed ? json(*seed) : json(nullptr);
    j["version"] = kVersion;
    j["wall_time_seconds"] = std::chrono::duration<double>(Clock::now() - start).count();
    return j;
}

const std::vector<std::string> kFamilies{"gaussian", "laplace", "logistic", "hsecant", "cauchy"};
const std::vector<std::string> kNulls{"point",     "bounded",          "bounded-closed",
                                      "one-sided", "one-sided-closed", "ext-trunc2norm"};

struct KernelFlags {
    std::string family = "gaussian";
    double scale = 1.0;
    std::string null = "point";
    std::optional<double> a;
    std::optional<double> b;
    double mu0 = 0.0;
    std::string omega = "triangular";
    double quad_norm = 0.01;
    std::string quad_rule = "midpoint";
    std::string ext_boundary = "none";

    void add_to(CLI::App* sub) {
        sub->add_option("--family", family, "Location-shift family")
            ->check(CLI::IsMember(kFamilies))
            ->capture_default_str();
        sub->add_option("--scale", scale, "Family scale")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        sub->add_option("--null", null, "Null hypothesis set")
            ->check(CLI::IsMember(kNulls))
            ->capture_default_str();
        sub->add_option("--a", a, "Lower end of a bounded null");
        sub->add_option("--b", b, "Upper end of a bounded or one-sided null");
        sub->add_option("--mu0", mu0, "Point null value")->capture_default_str();
        sub->add_option("--omega", omega, "Point-kernel density on [-1, 1]")
            ->check(CLI::IsMember({"triangular", "uniform"}))
            ->capture_default_str();
        sub->add_option("--quad-norm", quad_norm, "Riemann partition norm")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        sub->add_option("--quad-rule", quad_rule, "Riemann node rule")
            ->check(CLI::IsMember({"midpoint", "left"}))
            ->capture_default_str();
        sub->add_option("--ext-boundary", ext_boundary,
                        "Endpoint kernels for ext-trunc2norm (none uses K1 alone)")
            ->check(CLI::IsMember({"none", "open", "closed"}))
            ->capture_default_str();
    }

    LocationShiftFamily make_family() const { return LocationShiftFamily::from_id(family, scale); }

    QuadratureConfig make_quad() const { return {quad_norm, parse_rule(quad_rule)}; }

    NullSpec make_null() const {
        if (null == "point") return NullSpec::point(mu0);
        if (null == "bounded") return NullSpec::bounded_open(a.value_or(-1.0), b.value_or(2.0));
        if (null == "bounded-closed") {
            return NullSpec::bounded_closed(a.value_or(-1.0), b.value_or(2.0));
        }
        if (null == "one-sided") return NullSpec::one_sided_open(b.value_or(0.0));
        if (null == "one-sided-closed") return NullSpec::one_sided_closed(b.value_or(0.0));
        const double hi = b.value_or(2.0);
        const ExtensionBoundary eb = ext_boundary == "open"     ? ExtensionBoundary::Open
                                     : ext_boundary == "closed" ? ExtensionBoundary::Closed
                                                                : ExtensionBoundary::None;
        return NullSpec::extension(truncated_square(std::abs(hi)), a.value_or(-2.0), hi, eb);
    }

    KernelPair make_pair() const {
        return compose(make_null(), make_family(), OmegaDensity::parse(omega), make_quad());
    }
};

std::vector<double> parse_grid(const std::string& spec) {
    std::vector<double> parts;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ':')) {
        const auto v = parse_double(trim(item));
        if (!v) throw InvalidConfig("bad grid '" + spec + "' (expected lo:hi:step)");
        parts.push_back(*v);
    }
    if (parts.size() != 3 || !(parts[2] > 0.0) || !(parts[0] <= parts[1])) {
        throw InvalidConfig("bad grid '" + spec + "' (expected lo:hi:step, step > 0, lo <= hi)");
    }
    const auto n = static_cast<std::size_t>(std::floor((parts[1] - parts[0]) / parts[2] + 1e-9));
    std::vector<double> grid(n + 1);
    for (std::size_t i = 0; i <= n; ++i) grid[i] = parts[0] + static_cast<double>(i) * parts[2];
    return grid;
}

std::vector<EstimatorId> parse_estimators(const std::string& list) {
    std::vector<EstimatorId> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const std::string name = trim(item);
        if (name.empty()) continue;
        const EstimatorId id = parse_estimator(name);
        if (std::find(out.begin(), out.end(), id) == out.end()) out.push_back(id);
    }
    return out;
}

json summary_json(const SimulationReport& r) {
    json j;
    j["scenario"] = static_cast<int>(r.config.scenario);
    j["m"] = r.config.m;
    j["sparsity"] = sparsity_name(r.config.sparsity);
    j["reps"] = r.config.reps;
    j["seed"] = r.config.seed;
    j["gamma"] = r.config.gamma;
    j["t_used"] = r.t_used;
    j["quad_norm"] = r.config.quad.norm;
    j["quad_rule"] = rule_name(r.config.quad.rule);
    j["omega"] = r.config.omega.name();
    json est = json::array();
    for (const auto& s : r.series) {
        est.push_back({{"estimator", estimator_name(s.id)},
                       {"mean_excess", s.mean},
                       {"sd_excess", s.sd},
                       {"reps", s.excess.size()}});
    }
    j["estimators"] = est;
    return j;
}

std::string report_csv(const SimulationReport& r) {
    std::string out = "scenario,m,sparsity,estimator,rep,excess\n";
    const std::string prefix = std::to_string(static_cast<int>(r.config.scenario)) + "," +
                               std::to_string(r.config.m) + "," +
                               std::string(sparsity_name(r.config.sparsity)) + ",";
    for (const auto& s : r.series) {
        for (std::size_t rep = 0; rep < s.excess.size(); ++rep) {
            out += prefix + std::string(estimator_name(s.id)) + "," + std::to_string(rep) + "," +
                   fmt17(s.excess[rep]) + "\n";
        }
    }
    return out;
}

// Groups a simulate CSV by (scenario, m, sparsity, estimator), in file order.
json summarize_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error("cannot read '" + path + "'");
    std::string line;
    if (!std::getline(f, line) || trim(line) != "scenario,m,sparsity,estimator,rep,excess") {
        throw InvalidConfig("'" + path + "' is not a simulate report");
    }
    using Key = std::tuple<std::string, std::string, std::string, std::string>;
    std::vector<Key> order;
    std::map<Key, std::vector<double>> groups;
    std::size_t lineno = 1;
    while (std::getline(f, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
        const auto v = cells.size() == 6 ? parse_double(cells[5]) : std::nullopt;
        if (!v) throw InvalidConfig("malformed row at line " + std::to_string(lineno));
        Key k{cells[0], cells[1], cells[2], cells[3]};
        auto [it, inserted] = groups.try_emplace(k);
        if (inserted) order.push_back(k);
        it->second.push_back(*v);
    }
    json arr = json::array();
    for (const auto& k : order) {
        const auto& v = groups[k];
        const auto [mean, sd] = mean_sd(v);
        arr.push_back({{"scenario", std::stoi(std::get<0>(k))},
                       {"m", std::stoull(std::get<1>(k))},
                       {"sparsity", std::get<2>(k)},
                       {"estimator", std::get<3>(k)},
                       {"mean_excess", mean},
                       {"sd_excess", sd},
                       {"reps", v.size()}});
    }
    return json{{"groups", arr}};
}

}  // namespace

std::vector<double> read_column(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error("cannot read '" + path + "'");
    std::vector<double> out;
    std::string line;
    std::size_t lineno = 0;
    bool seen_data = false;
    while (std::getline(f, line)) {
        ++lineno;
        std::string cell = trim(line);
        if (cell.empty()) continue;
        if (cell.find(',') != std::string::npos) {
            throw InvalidConfig("line " + std::to_string(lineno) + " has more than one column");
        }
        const auto v = parse_double(cell);
        if (!v) {
            if (!seen_data && out.empty()) {
                seen_data = true;  // header
                continue;
            }
            throw InvalidConfig("line " + std::to_string(lineno) + " is not a number: '" + cell +
                                "'");
        }
        seen_data = true;
        out.push_back(*v);
    }
    return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    const auto start = Clock::now();
    CLI::App app{"Proportion estimators for composite nulls on location-shift families",
                 "propest"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);
    int threads_flag = 0;
    app.add_option("--threads", threads_flag, "Worker threads (0: PROPEST_THREADS or all cores)")
        ->check(CLI::NonNegativeNumber);

    // estimate
    auto* est = app.add_subcommand("estimate", "Estimate the alternative proportion");
    KernelFlags est_k;
    est_k.add_to(est);
    std::string est_input;
    double est_gamma = 0.495;
    std::optional<double> est_t;
    est->add_option("--input", est_input, "Observations file")->required();
    est->add_option("--gamma", est_gamma, "Speed tuning, t = sqrt(2 gamma ln m)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    est->add_option("--t", est_t, "Fixed t (overrides --gamma)")->check(CLI::NonNegativeNumber);
    est->add_option("--threads", threads_flag, "Worker threads")->check(CLI::NonNegativeNumber);

    // baselines
    auto* base = app.add_subcommand("baselines", "MR and fixed-lambda Storey estimates");
    std::string base_input;
    std::string base_family = "gaussian";
    double base_scale = 1.0;
    double base_b = 0.0;
    double base_lambda = 0.5;
    bool base_pvalues = false;
    base->add_option("--input", base_input, "Observations (or p-values) file")->required();
    base->add_option("--family", base_family, "Location-shift family")
        ->check(CLI::IsMember(kFamilies))
        ->capture_default_str();
    base->add_option("--scale", base_scale, "Family scale")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    base->add_option("--b", base_b, "One-sided null boundary")->capture_default_str();
    base->add_option("--lambda", base_lambda, "Storey threshold")->capture_default_str();
    base->add_flag("--pvalues", base_pvalues, "Input already holds p-values");

    // simulate
    auto* sim = app.add_subcommand("simulate", "Run a simulation scenario");
    std::string sim_scenario;
    std::size_t sim_m = 1000;
    std::string sim_sparsity = "dense";
    std::size_t sim_reps = 200;
    std::uint64_t sim_seed = 0;
    std::string sim_estimators = "new";
    std::string sim_out;
    double sim_gamma = 0.495;
    std::string sim_omega = "triangular";
    double sim_norm = 0.01;
    std::string sim_rule = "midpoint";
    double sim_lambda = 0.5;
    sim->add_option("--scenario", sim_scenario, "Scenario")
        ->required()
        ->check(CLI::IsMember({"1", "2", "3"}));
    sim->add_option("--m", sim_m, "Number of hypotheses")->capture_default_str();
    sim->add_option("--sparsity", sim_sparsity, "Alternative proportion regime")
        ->check(CLI::IsMember({"dense", "moderate"}))
        ->capture_default_str();
    sim->add_option("--reps", sim_reps, "Replications")->capture_default_str();
    sim->add_option("--seed", sim_seed, "Master seed")->capture_default_str();
    sim->add_option("--estimators", sim_estimators, "Comma list of new, mr, storey")
        ->capture_default_str();
    sim->add_option("--out", sim_out, "CSV path (stdout if omitted)");
    sim->add_option("--gamma", sim_gamma, "Speed tuning")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sim->add_option("--omega", sim_omega, "Point-kernel density")
        ->check(CLI::IsMember({"triangular", "uniform"}))
        ->capture_default_str();
    sim->add_option("--quad-norm", sim_norm, "Riemann partition norm")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sim->add_option("--quad-rule", sim_rule, "Riemann node rule")
        ->check(CLI::IsMember({"midpoint", "left"}))
        ->capture_default_str();
    sim->add_option("--lambda", sim_lambda, "Storey threshold")->capture_default_str();
    sim->add_option("--threads", threads_flag, "Worker threads")->check(CLI::NonNegativeNumber);

    // kernel-table
    auto* tab = app.add_subcommand("kernel-table", "Tabulate psi(t, g) and K(t, g) on a grid");
    KernelFlags tab_k;
    tab_k.add_to(tab);
    double tab_t = 20.0;
    std::optional<double> tab_kt;
    std::string tab_grid = "-6:8:0.05";
    std::string tab_out;
    tab->add_option("--t", tab_t, "t for psi")->check(CLI::NonNegativeNumber)->capture_default_str();
    tab->add_option("--k-t", tab_kt, "t for K (defaults to --t)")->check(CLI::NonNegativeNumber);
    tab->add_option("--grid", tab_grid, "lo:hi:step")->capture_default_str();
    tab->add_option("--out", tab_out, "CSV path (stdout if omitted)");

    // summary
    auto* sum = app.add_subcommand("summary", "Recompute mean and sd from a simulate CSV");
    std::string sum_input;
    sum->add_option("--input", sum_input, "simulate CSV")->required();

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        if (!rev.empty()) rev.pop_back();
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        const unsigned threads = threads_from(threads_flag);
        if (*est) {
            const auto z = read_column(est_input);
            if (z.empty()) throw EmptyInput("no observations in '" + est_input + "'");
            const KernelPair pair = est_k.make_pair();
            const double t = est_t ? *est_t : default_speed(z.size(), est_gamma);
            const EstimateResult r = estimate(z, pair, t, threads);
            json j{{"pi1_hat", r.pi1_hat},
                   {"pi0_hat", r.pi0_hat},
                   {"pi1_hat_clamped", r.pi1_hat_clamped},
                   {"t_used", r.t_used},
                   {"m", r.m},
                   {"null", r.null},
                   {"family", r.family}};
            j["manifest"] = manifest("estimate", args, std::nullopt, start);
            out << j.dump(2) << "\n";
        } else if (*base) {
            const auto x = read_column(base_input);
            if (x.empty()) throw EmptyInput("no values in '" + base_input + "'");
            std::vector<double> p = x;
            if (!base_pvalues) {
                p = one_sided_pvalues(x, base_b, LocationShiftFamily::from_id(base_family,
                                                                               base_scale));
            }
            const PValueVector pv(p);
            json j{{"m", pv.size()},
                   {"storey_pi1_hat", storey_estimate(pv, base_lambda)},
                   {"lambda", base_lambda}};
            j["mr_pi1_hat"] = pv.size() > 4 ? json(mr_estimate(pv)) : json(nullptr);
            j["manifest"] = manifest("baselines", args, std::nullopt, start);
            out << j.dump(2) << "\n";
        } else if (*sim) {
            ScenarioConfig cfg;
            cfg.scenario = parse_scenario(sim_scenario);
            cfg.m = sim_m;
            cfg.sparsity = parse_sparsity(sim_sparsity);
            cfg.reps = sim_reps;
            cfg.seed = sim_seed;
            cfg.gamma = sim_gamma;
            cfg.omega = OmegaDensity::parse(sim_omega);
            cfg.quad = {sim_norm, parse_rule(sim_rule)};
            cfg.estimators = parse_estimators(sim_estimators);
            cfg.storey_lambda = sim_lambda;
            cfg.threads = threads;
            const SimulationReport r = run(cfg);
            const std::string csv = report_csv(r);
            if (sim_out.empty()) {
                out << csv;
            } else {
                write_text(sim_out, csv);
                const json s = summary_json(r);
                write_text(sim_out + ".summary.json", s.dump(2) + "\n");
                write_text(sim_out + ".manifest.json",
                           manifest("simulate", args, sim_seed, start).dump(2) + "\n");
                out << s.dump(2) << "\n";
            }
        } else if (*tab) {
            const KernelPair pair = tab_k.make_pair();
            const auto grid = parse_grid(tab_grid);
            const KernelAtT kt = pair.at(tab_kt.value_or(tab_t));
            std::string csv = "grid_value,psi,k\n";
            for (double g : grid) {
                csv += fmt17(g) + "," + fmt17(pair.eval_psi(tab_t, g)) + "," + fmt17(kt.k(g)) +
                       "\n";
            }
            if (tab_out.empty()) {
                out << csv;
            } else {
                write_text(tab_out, csv);
                write_text(tab_out + ".manifest.json",
                           manifest("kernel-table", args, std::nullopt, start).dump(2) + "\n");
            }
        } else if (*sum) {
            out << summarize_csv(sum_input).dump(2) << "\n";
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace propest::cli
