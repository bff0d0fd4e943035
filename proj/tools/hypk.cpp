// hypk command line: tabulate hitting kernels, evaluate exit probabilities,
// run first-passage simulations, and execute the validation suite.
//
// Exit status: 0 success, 1 usage error, 2 validation failure,
// 3 simulation truncation overflow.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "hypk/acceptance.hpp"
#include "hypk/exit_probabilities.hpp"
#include "hypk/geometry.hpp"
#include "hypk/kernels.hpp"
#include "hypk/simulation.hpp"
#include "hypk/statistics.hpp"

using json = nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = HYPK_VERSION;
constexpr const char* kCrlf = "\r\n";

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

json make_manifest(const std::string& command, const json& parameters, std::uint64_t seed) {
    json m;
    m["command"] = command;
    m["parameters"] = parameters;
    m["seed"] = seed;
    m["tool_version"] = kVersion;
    m["timestamp"] = utc_timestamp();
    return m;
}

void write_text(const std::string& path, const std::string& body) {
    if (path.empty()) {
        std::cout << body;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << body;
}

void write_manifest_sidecar(const std::string& out_path, const json& manifest) {
    if (out_path.empty()) return;  // stdout output carries no manifest file
    std::ofstream out(out_path + ".manifest.json", std::ios::binary);
    out << manifest.dump(2) << "\n";
}

// ----------------------------------------------------------------- kernel

struct KernelArgs {
    std::string model;
    int dim = 3;
    double eta = 0.0, eta_bar = 1.0;
    double r = 0.0, r_bar = 0.5;
    double theta = 0.0, theta_bar = 1.0;
    double x = 0.0, y = 1.0;
    double rho = 0.0;
    int grid = 100;
    double angle_min = 0.0, angle_max = 0.0;  // 0,0 -> model default
    double tol = 1e-12;
    int max_terms = 200000;
    std::string format = "csv";
    std::string out;
};

int run_kernel(const KernelArgs& a) {
    std::function<hypk::KernelEvaluation(double)> eval;
    double lo = -M_PI, hi = M_PI;
    std::string abscissa = "angle";
    bool has_bound = false;

    const auto closed = [](std::function<double(double)> f) {
        return [f = std::move(f)](double v) { return hypk::KernelEvaluation{f(v), 0, 0.0}; };
    };

    if (a.model == "h2") {
        eval = closed([&](double d) { return hypk::poisson_h2(a.eta, d, a.eta_bar); });
    } else if (a.model == "h2-boundary") {
        eval = closed([&](double d) { return hypk::poisson_h2_boundary(a.eta, d); });
    } else if (a.model == "d2") {
        eval = closed([&](double d) { return hypk::poisson_d2(a.r, d, a.r_bar); });
    } else if (a.model == "sphere") {
        eval = closed([&](double d) { return hypk::poisson_sphere(a.theta, d, a.theta_bar); });
    } else if (a.model == "cauchy") {
        lo = -8.0;
        hi = 8.0;
        abscissa = "x_bar";
        eval = closed([&](double xb) { return hypk::cauchy_hitting_density(a.x, a.y, xb); });
    } else if (a.model == "euclidean-nd") {
        lo = 0.0;
        hi = M_PI;
        abscissa = "psi";
        eval = closed([&](double p) { return hypk::euclidean_poisson_nd(a.dim, a.rho, p); });
    } else if (a.model == "hn") {
        lo = 0.0;
        hi = M_PI;
        abscissa = "psi";
        has_bound = true;
        auto series = std::make_shared<hypk::PoissonHnSeries>(
            a.dim, a.eta, a.eta_bar, hypk::SeriesControl{a.tol, a.max_terms});
        eval = [series](double p) { return (*series)(p); };
    } else if (a.model == "hn-infinite") {
        lo = 0.0;
        hi = M_PI;
        abscissa = "psi";
        has_bound = true;
        auto series = std::make_shared<hypk::PoissonHnSeries>(hypk::PoissonHnSeries::boundary_limit(
            a.dim, a.eta, hypk::SeriesControl{a.tol, a.max_terms}));
        eval = [series](double p) { return (*series)(p); };
    } else {
        throw CLI::ValidationError("--model", "unknown kernel model: " + a.model);
    }
    if (a.angle_max > a.angle_min) {
        lo = a.angle_min;
        hi = a.angle_max;
    }

    json params;
    params["model"] = a.model;
    params["dim"] = a.dim;
    params["eta"] = a.eta;
    params["eta_bar"] = a.eta_bar;
    params["r"] = a.r;
    params["r_bar"] = a.r_bar;
    params["theta"] = a.theta;
    params["theta_bar"] = a.theta_bar;
    params["x"] = a.x;
    params["y"] = a.y;
    params["rho"] = a.rho;
    params["grid"] = a.grid;
    params["angle_min"] = lo;
    params["angle_max"] = hi;
    params["tol"] = a.tol;
    params["max_terms"] = a.max_terms;

    if (a.format == "csv") {
        std::ostringstream csv;
        csv << abscissa << ",density";
        if (has_bound) csv << ",truncation_bound";
        csv << kCrlf;
        for (int i = 0; i < a.grid; ++i) {
            const double v = lo + (hi - lo) * (i + 0.5) / a.grid;
            const auto k = eval(v);
            csv << format_double(v) << "," << format_double(k.density);
            if (has_bound) csv << "," << format_double(k.truncation_error_bound);
            csv << kCrlf;
        }
        write_text(a.out, csv.str());
        write_manifest_sidecar(a.out, make_manifest("kernel", params, 0));
    } else if (a.format == "json") {
        json doc;
        doc["rows"] = json::array();
        for (int i = 0; i < a.grid; ++i) {
            const double v = lo + (hi - lo) * (i + 0.5) / a.grid;
            const auto k = eval(v);
            json row;
            row[abscissa] = v;
            row["density"] = k.density;
            if (has_bound) row["truncation_bound"] = k.truncation_error_bound;
            doc["rows"].push_back(row);
        }
        doc["manifest"] = make_manifest("kernel", params, 0);
        write_text(a.out, doc.dump(2) + "\n");
    } else {
        throw CLI::ValidationError("--format", "kernel supports csv or json");
    }
    return 0;
}

// ------------------------------------------------------------------- exit

struct ExitArgs {
    std::string geometry;
    int dim = 3;
    double eta = 0.0;
    double eta1 = 0.0;
    std::optional<double> eta2;
    std::string format = "json";
    std::string out;
};

int run_exit(const ExitArgs& a) {
    double p = 0.0;
    if (a.geometry == "h2") {
        p = a.eta2 ? hypk::exit_prob_h2(a.eta, a.eta1, *a.eta2) : hypk::hit_prob_h2(a.eta, a.eta1);
    } else if (a.geometry == "hn") {
        p = a.eta2 ? hypk::exit_prob_hn(a.dim, a.eta, a.eta1, *a.eta2)
                   : hypk::hit_prob_hn(a.dim, a.eta, a.eta1);
    } else if (a.geometry == "d2") {
        p = a.eta2 ? hypk::exit_prob_d2(a.eta, a.eta1, *a.eta2) : hypk::hit_prob_d2(a.eta, a.eta1);
    } else if (a.geometry == "sphere") {
        if (!a.eta2) throw CLI::ValidationError("--eta2", "sphere requires both boundaries");
        p = hypk::exit_prob_sphere(a.eta, a.eta1, *a.eta2);
    } else if (a.geometry == "euclidean") {
        if (!a.eta2) throw CLI::ValidationError("--eta2", "euclidean requires both boundaries");
        p = hypk::exit_prob_euclidean(a.dim, a.eta, a.eta1, *a.eta2);
    } else {
        throw CLI::ValidationError("--geometry", "unknown geometry: " + a.geometry);
    }

    const int n = (a.geometry == "h2" || a.geometry == "d2") ? 2
                  : (a.geometry == "sphere")                 ? 2
                                                             : a.dim;
    json record;
    record["geometry"] = a.geometry;
    record["n"] = n;
    record["eta1"] = a.eta1;
    record["eta"] = a.eta;
    if (a.eta2)
        record["eta2"] = *a.eta2;
    else
        record["eta2"] = nullptr;
    record["probability"] = p;
    json params = record;
    params.erase("probability");
    if (a.format == "json") {
        record["manifest"] = make_manifest("exit", params, 0);
        write_text(a.out, record.dump(2) + "\n");
    } else if (a.format == "csv") {
        std::ostringstream csv;
        csv << "geometry,n,eta1,eta,eta2,probability" << kCrlf;
        csv << a.geometry << "," << n << "," << format_double(a.eta1) << ","
            << format_double(a.eta) << "," << (a.eta2 ? format_double(*a.eta2) : "") << ","
            << format_double(p) << kCrlf;
        write_text(a.out, csv.str());
        write_manifest_sidecar(a.out, make_manifest("exit", params, 0));
    } else {
        throw CLI::ValidationError("--format", "exit supports json or csv");
    }
    return 0;
}

// --------------------------------------------------------------- simulate

struct SimulateArgs {
    std::string model;
    int dim = 2;
    double eta = 0.5, alpha = 0.0, eta_bar = 1.0;
    double theta = 0.5, phi = 0.0, theta_bar = 1.0;
    long paths = 10000;
    double step = 1e-4;
    std::uint64_t seed = 1;
    long max_steps = 50000000;
    std::string out;
};

int run_simulate(const SimulateArgs& a) {
    hypk::SimConfig cfg;
    cfg.dimension = a.dim;
    cfg.step = a.step;
    cfg.num_paths = a.paths;
    cfg.seed = a.seed;
    cfg.max_steps = a.max_steps;

    std::vector<hypk::ExitSample> samples;
    json params;
    params["model"] = a.model;
    params["paths"] = a.paths;
    params["step"] = a.step;
    params["max_steps"] = a.max_steps;
    if (a.model == "h2" || a.model == "hn") {
        cfg.dimension = (a.model == "h2") ? 2 : a.dim;
        samples = hypk::first_hit_sphere(cfg, hypk::PolarPoint(a.eta, a.alpha), a.eta_bar);
        params["dim"] = cfg.dimension;
        params["eta"] = a.eta;
        params["alpha"] = a.alpha;
        params["eta_bar"] = a.eta_bar;
    } else if (a.model == "sphere") {
        samples = hypk::first_hit_spherical_circle(cfg, hypk::SpherePoint{a.theta, a.phi},
                                                   a.theta_bar);
        params["theta"] = a.theta;
        params["phi"] = a.phi;
        params["theta_bar"] = a.theta_bar;
    } else {
        throw CLI::ValidationError("--model", "unknown simulation model: " + a.model);
    }

    std::ostringstream csv;
    csv << "path,psi,signed_angle,steps,overshoot,truncated" << kCrlf;
    long truncated = 0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& s = samples[i];
        truncated += s.truncated ? 1 : 0;
        csv << i << "," << format_double(s.psi) << ",";
        if (s.signed_angle) csv << format_double(*s.signed_angle);
        csv << "," << s.steps_taken << "," << format_double(s.overshoot) << ","
            << (s.truncated ? 1 : 0) << kCrlf;
    }
    write_text(a.out, csv.str());
    write_manifest_sidecar(a.out, make_manifest("simulate", params, a.seed));

    if (truncated > 1e-3 * static_cast<double>(samples.size())) {
        std::cerr << "simulate: " << truncated << " of " << samples.size()
                  << " paths hit the step cap\n";
        return 3;
    }
    return 0;
}

// --------------------------------------------------------------- validate

struct ValidateArgs {
    std::string suite = "all";
    bool fast = false;
    std::optional<long> kernel_paths, exit_paths, escape_paths;
    std::optional<std::uint64_t> seed;
    std::string out;
};

int run_validate(const ValidateArgs& a) {
    hypk::acceptance::Suite suite;
    if (a.suite == "kernels")
        suite = hypk::acceptance::Suite::Kernels;
    else if (a.suite == "exits")
        suite = hypk::acceptance::Suite::Exits;
    else if (a.suite == "all")
        suite = hypk::acceptance::Suite::All;
    else
        throw CLI::ValidationError("--suite", "unknown suite: " + a.suite);

    hypk::acceptance::Budget budget =
        a.fast ? hypk::acceptance::Budget::fast() : hypk::acceptance::Budget{};
    if (a.kernel_paths) budget.kernel_paths = *a.kernel_paths;
    if (a.exit_paths) budget.exit_paths = *a.exit_paths;
    if (a.escape_paths) budget.escape_paths = *a.escape_paths;
    if (a.seed) budget.seed = *a.seed;

    const auto results = hypk::acceptance::run(suite, budget, [](const auto& r) {
        std::cerr << "criterion " << r.id << " [" << r.name << "]: "
                  << (r.passed ? "PASS" : "FAIL") << " (" << r.detail << ") ["
                  << format_double(r.seconds) << " s]\n";
    });

    bool all_passed = true;
    json report;
    report["suite"] = a.suite;
    report["fast"] = a.fast;
    report["criteria"] = json::array();
    for (const auto& r : results) {
        json c;
        c["id"] = r.id;
        c["name"] = r.name;
        c["passed"] = r.passed;
        c["detail"] = r.detail;
        c["seconds"] = r.seconds;
        report["criteria"].push_back(c);
        all_passed = all_passed && r.passed;
    }
    report["all_passed"] = all_passed;
    json params;
    params["suite"] = a.suite;
    params["fast"] = a.fast;
    params["kernel_paths"] = budget.kernel_paths;
    params["exit_paths"] = budget.exit_paths;
    params["escape_paths"] = budget.escape_paths;
    report["manifest"] = make_manifest("validate", params, budget.seed);
    write_text(a.out, report.dump(2) + "\n");
    return all_passed ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hitting kernels and exit probabilities for Brownian motion on H^2, H^n, D^2 and S^2"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    KernelArgs kernel_args;
    auto* kernel = app.add_subcommand("kernel", "tabulate a hitting density over a grid (CSV)");
    kernel->add_option("--model", kernel_args.model,
                       "h2 | h2-boundary | hn | hn-infinite | d2 | sphere | cauchy | euclidean-nd")
        ->required();
    kernel->add_option("--dim", kernel_args.dim, "dimension n for hn/euclidean-nd");
    kernel->add_option("--eta", kernel_args.eta, "start radius (h2/hn)");
    kernel->add_option("--eta-bar", kernel_args.eta_bar, "boundary radius (h2/hn)");
    kernel->add_option("--r", kernel_args.r, "start radius (d2)");
    kernel->add_option("--r-bar", kernel_args.r_bar, "boundary radius (d2)");
    kernel->add_option("--theta", kernel_args.theta, "start colatitude (sphere)");
    kernel->add_option("--theta-bar", kernel_args.theta_bar, "boundary colatitude (sphere)");
    kernel->add_option("--x", kernel_args.x, "start x (cauchy)");
    kernel->add_option("--y", kernel_args.y, "start y (cauchy)");
    kernel->add_option("--rho", kernel_args.rho, "radius ratio (euclidean-nd)");
    kernel->add_option("--grid", kernel_args.grid, "number of grid rows")->check(CLI::PositiveNumber);
    kernel->add_option("--angle-min", kernel_args.angle_min, "override grid lower bound");
    kernel->add_option("--angle-max", kernel_args.angle_max, "override grid upper bound");
    kernel->add_option("--tol", kernel_args.tol, "series tolerance (hn)");
    kernel->add_option("--max-terms", kernel_args.max_terms, "series term cap (hn)");
    kernel->add_option("--format", kernel_args.format, "csv | json");
    kernel->add_option("--out", kernel_args.out, "output file (default stdout)");

    ExitArgs exit_args;
    auto* exit_cmd = app.add_subcommand("exit", "evaluate an exit or escape probability (JSON)");
    exit_cmd->add_option("--geometry", exit_args.geometry, "h2 | hn | d2 | sphere | euclidean")
        ->required();
    exit_cmd->add_option("--dim", exit_args.dim, "dimension n (hn/euclidean)");
    exit_cmd->add_option("--eta", exit_args.eta, "start radius / colatitude")->required();
    exit_cmd->add_option("--eta1", exit_args.eta1, "boundary whose first hit is reported")
        ->required();
    double eta2_value = 0.0;
    auto* eta2_opt = exit_cmd->add_option("--eta2", eta2_value, "other boundary (omit for escape)");
    exit_cmd->add_option("--format", exit_args.format, "json | csv");
    exit_cmd->add_option("--out", exit_args.out, "output file (default stdout)");

    SimulateArgs sim_args;
    auto* simulate = app.add_subcommand("simulate", "sample first-passage locations (CSV)");
    simulate->add_option("--model", sim_args.model, "h2 | hn | sphere")->required();
    simulate->add_option("--dim", sim_args.dim, "dimension n (hn)");
    simulate->add_option("--eta", sim_args.eta, "start radius");
    simulate->add_option("--alpha", sim_args.alpha, "start angle (h2)");
    simulate->add_option("--eta-bar", sim_args.eta_bar, "target radius");
    simulate->add_option("--theta", sim_args.theta, "start colatitude (sphere)");
    simulate->add_option("--phi", sim_args.phi, "start longitude (sphere)");
    simulate->add_option("--theta-bar", sim_args.theta_bar, "target colatitude (sphere)");
    simulate->add_option("--paths", sim_args.paths, "number of paths")->check(CLI::PositiveNumber);
    simulate->add_option("--step", sim_args.step, "time step h");
    simulate->add_option("--seed", sim_args.seed, "RNG seed");
    simulate->add_option("--max-steps", sim_args.max_steps, "per-path step cap");
    simulate->add_option("--out", sim_args.out, "output file (default stdout)");

    ValidateArgs validate_args;
    auto* validate = app.add_subcommand("validate", "run the validation suite (JSON report)");
    validate->add_option("--suite", validate_args.suite, "kernels | exits | all");
    validate->add_flag("--fast", validate_args.fast, "reduced path budget");
    long kp = 0, ep = 0, sp = 0;
    std::uint64_t seed_override = 0;
    auto* kp_opt = validate->add_option("--kernel-paths", kp, "override kernel-test paths");
    auto* ep_opt = validate->add_option("--exit-paths", ep, "override exit-test paths");
    auto* sp_opt = validate->add_option("--escape-paths", sp, "override escape-test paths");
    auto* seed_opt = validate->add_option("--seed", seed_override, "override suite seed");
    validate->add_option("--out", validate_args.out, "report file (default stdout)");

    try {
        app.parse(argc, argv);
        if (kernel->parsed()) return run_kernel(kernel_args);
        if (exit_cmd->parsed()) {
            if (eta2_opt->count() > 0) exit_args.eta2 = eta2_value;
            return run_exit(exit_args);
        }
        if (simulate->parsed()) return run_simulate(sim_args);
        if (validate->parsed()) {
            if (kp_opt->count() > 0) validate_args.kernel_paths = kp;
            if (ep_opt->count() > 0) validate_args.exit_paths = ep;
            if (sp_opt->count() > 0) validate_args.escape_paths = sp;
            if (seed_opt->count() > 0) validate_args.seed = seed_override;
            return run_validate(validate_args);
        }
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
