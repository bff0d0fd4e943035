#include "hypk/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "hypk/exit_probabilities.hpp"
#include "hypk/geometry.hpp"
#include "hypk/kernels.hpp"
#include "hypk/random.hpp"
#include "hypk/simulation.hpp"
#include "hypk/statistics.hpp"

namespace hypk::acceptance {

namespace {

struct Worst {
    double value = 0.0;
    void feed(double v) { value = std::max(value, v); }
};

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << v;
    return os.str();
}

double uniform(Xoshiro256pp& rng, double lo, double hi) {
    return lo + (hi - lo) * rng.uniform01();
}

// ------------------------------------------------------------------ 1
CriterionResult criterion_normalization(const Budget& budget) {
    CriterionResult r{1, "kernel normalization", false, "", 0.0};
    Xoshiro256pp rng(budget.seed ^ 0x11ULL);
    Worst worst_closed, worst_hn;

    const auto angular_integral = [](const std::function<double(double)>& f, double lo, double hi) {
        return integrate(f, lo, hi, 1e-11, 24).value;
    };

    for (int i = 0; i < 10; ++i) {
        const double eta_bar = uniform(rng, 0.3, 2.5);
        const double eta = uniform(rng, 0.0, 0.85) * eta_bar;
        const double total = angular_integral(
            [&](double a) { return poisson_h2(eta, a, eta_bar); }, -M_PI, M_PI);
        worst_closed.feed(std::abs(total - 1.0));
    }
    for (int n = 3; n <= 5; ++n) {
        for (int i = 0; i < 5; ++i) {
            const double eta_bar = uniform(rng, 0.4, 2.0);
            const double eta = uniform(rng, 0.05, 0.8) * eta_bar;
            const PoissonHnSeries kernel(n, eta, eta_bar);
            const double total = integrate([&](double p) { return kernel(p).density; }, 0.0,
                                           M_PI, 1e-9, 18)
                                     .value;
            worst_hn.feed(std::abs(total - 1.0));
        }
    }
    for (int i = 0; i < 5; ++i) {
        const double r_bar = uniform(rng, 0.2, 0.9);
        const double rr = uniform(rng, 0.0, 0.85) * r_bar;
        worst_closed.feed(std::abs(
            angular_integral([&](double a) { return poisson_d2(rr, a, r_bar); }, -M_PI, M_PI) -
            1.0));
        const double theta_bar = uniform(rng, 0.4, 2.6);
        const double theta = uniform(rng, 0.05, 0.85) * theta_bar;
        worst_closed.feed(std::abs(
            angular_integral([&](double a) { return poisson_sphere(theta, a, theta_bar); }, -M_PI,
                             M_PI) -
            1.0));
        const double eta = uniform(rng, 0.1, 3.0);
        worst_closed.feed(std::abs(
            angular_integral([&](double a) { return poisson_h2_boundary(eta, a); }, -M_PI, M_PI) -
            1.0));
        const double r_limit = uniform(rng, 0.1, 0.9);
        worst_closed.feed(std::abs(
            angular_integral([&](double a) { return poisson_d2_boundary(r_limit, a); }, -M_PI,
                             M_PI) -
            1.0));
    }
    r.passed = worst_closed.value < 1e-8 && worst_hn.value < 1e-7;
    r.detail = "max |integral-1|: closed forms " + fmt(worst_closed.value) +
               " (tol 1e-8), H^n series " + fmt(worst_hn.value) + " (tol 1e-7)";
    return r;
}

// ------------------------------------------------------------------ 2
CriterionResult criterion_series_equivalence(const Budget& budget) {
    CriterionResult r{2, "series vs closed form (H^2)", false, "", 0.0};
    Xoshiro256pp rng(budget.seed ^ 0x22ULL);
    constexpr double kFpSlack = 1e-14;  // strict bound is below double roundoff
    Worst worst_excess, worst_bound;
    bool ok = true;
    for (int i = 0; i < 1000; ++i) {
        const double eta_bar = uniform(rng, 0.2, 2.0);
        const double eta = uniform(rng, 0.0, 0.7) * eta_bar;
        const double dalpha = uniform(rng, -M_PI, M_PI);
        const double closed = poisson_h2(eta, dalpha, eta_bar);
        const KernelEvaluation series = poisson_h2_series(eta, dalpha, eta_bar, 200);
        const double diff = std::abs(closed - series.density);
        worst_bound.feed(series.truncation_error_bound);
        worst_excess.feed(diff - series.truncation_error_bound);
        ok = ok && diff <= series.truncation_error_bound + kFpSlack &&
             series.truncation_error_bound < 1e-12;
    }
    r.passed = ok;
    r.detail = "max (|diff| - bound) = " + fmt(worst_excess.value) + " (fp slack 1e-14), max bound = " +
               fmt(worst_bound.value) + " (tol 1e-12)";
    return r;
}

// ------------------------------------------------------------------ 3
CriterionResult criterion_limits(const Budget&) {
    CriterionResult r{3, "limit chain", false, "", 0.0};
    Worst wa, wb, wc, wd;
    for (double eta = 0.2; eta <= 2.01; eta += 0.3) {
        for (int j = 0; j < 25; ++j) {
            const double dalpha = -M_PI + 2.0 * M_PI * (j + 0.5) / 25.0;
            wa.feed(std::abs(poisson_h2(eta, dalpha, 12.0) - poisson_h2_boundary(eta, dalpha)));
        }
    }
    const double scale = 1e-3;
    for (double eta : {0.2, 0.5, 0.8}) {
        for (int j = 0; j < 25; ++j) {
            const double dalpha = -M_PI + 2.0 * M_PI * (j + 0.5) / 25.0;
            const double euclid = (1.0 - eta * eta) /
                                  (2.0 * M_PI * (1.0 + eta * eta - 2.0 * eta * std::cos(dalpha)));
            wb.feed(std::abs(poisson_h2(scale * eta, dalpha, scale) - euclid));
        }
    }
    for (int n : {3, 4}) {
        for (double rho : {0.3, 0.6}) {
            for (int j = 0; j < 20; ++j) {
                const double psi = M_PI * (j + 0.5) / 20.0;
                const double hn = poisson_hn(n, scale * rho, scale, psi).density;
                wc.feed(std::abs(hn - euclidean_poisson_nd(n, rho, psi)));
            }
        }
    }
    for (int j = 0; j <= 40; ++j) {
        const double xb = -10.0 + 20.0 * j / 40.0;
        wd.feed(std::abs(cauchy_hitting_density(0.0, 1.0, xb) - 1.0 / (M_PI * (1.0 + xb * xb))));
    }
    r.passed = wa.value < 1e-4 && wb.value < 1e-4 && wc.value < 1e-4 && wd.value < 1e-12;
    r.detail = "boundary " + fmt(wa.value) + ", euclid-2d " + fmt(wb.value) + ", euclid-nd " +
               fmt(wc.value) + " (tol 1e-4); cauchy " + fmt(wd.value) + " (tol 1e-12)";
    return r;
}

// ------------------------------------------------------------------ 4
CriterionResult criterion_cross_model(const Budget& budget) {
    CriterionResult r{4, "H^2 <-> D^2 exactness", false, "", 0.0};
    Xoshiro256pp rng(budget.seed ^ 0x44ULL);
    Worst worst;
    for (int i = 0; i < 1000; ++i) {
        const double eta_bar = uniform(rng, 0.2, 4.0);
        const double eta = uniform(rng, 0.01, 0.9) * eta_bar;
        const double dalpha = uniform(rng, -M_PI, M_PI);
        const double disc = poisson_d2(std::tanh(0.5 * eta), dalpha, std::tanh(0.5 * eta_bar));
        worst.feed(std::abs(poisson_h2(eta, dalpha, eta_bar) - disc));

        const double eta1 = uniform(rng, 0.05, 1.0);
        const double eta2 = eta1 + uniform(rng, 0.2, 2.5);
        const double mid = uniform(rng, 0.05, 0.95);
        const double start = eta1 + mid * (eta2 - eta1);
        const double d2 = exit_prob_d2(std::tanh(0.5 * start), std::tanh(0.5 * eta1),
                                       std::tanh(0.5 * eta2));
        worst.feed(std::abs(exit_prob_h2(start, eta1, eta2) - d2));
    }
    r.passed = worst.value < 1e-12;
    r.detail = "max |H^2 - D^2| = " + fmt(worst.value) + " (tol 1e-12)";
    return r;
}

// ------------------------------------------------------------------ 5
CriterionResult criterion_mc_kernels(const Budget& budget) {
    CriterionResult r{5, "Monte Carlo kernel chi-square", false, "", 0.0};
    std::ostringstream detail;
    bool ok = true;

    SimConfig cfg;
    cfg.step = budget.kernel_step;
    cfg.num_paths = budget.kernel_paths;
    cfg.seed = budget.seed;

    {  // (i) H^2
        cfg.dimension = 2;
        const auto samples = first_hit_sphere(cfg, PolarPoint(0.8, 0.0), 1.5);
        std::vector<double> angles;
        angles.reserve(samples.size());
        for (const auto& s : samples)
            if (!s.truncated) angles.push_back(*s.signed_angle);
        const auto hist = make_histogram(angles, -M_PI, M_PI, 36);
        const auto gof = chi_square_test(
            hist, [](double a) { return poisson_h2(0.8, a, 1.5); }, 0.01);
        ok = ok && gof.passed;
        detail << "H2 chi2=" << fmt(gof.statistic) << "/thr=" << fmt(gof.threshold);
    }
    {  // (ii) H^3 psi marginal
        cfg.dimension = 3;
        const auto samples = first_hit_sphere(cfg, PolarPoint(0.5, 0.0), 1.2);
        std::vector<double> psis;
        psis.reserve(samples.size());
        for (const auto& s : samples)
            if (!s.truncated) psis.push_back(s.psi);
        const auto hist = make_histogram(psis, 0.0, M_PI, 36);
        const PoissonHnSeries kernel(3, 0.5, 1.2);
        const auto gof = chi_square_test(
            hist, [&](double p) { return kernel(p).density; }, 0.01);
        ok = ok && gof.passed;
        detail << "; H3 chi2=" << fmt(gof.statistic) << "/thr=" << fmt(gof.threshold);
    }
    {  // (iii) S^2
        cfg.dimension = 2;
        const auto samples = first_hit_spherical_circle(cfg, SpherePoint{0.6, 0.0}, 1.2);
        std::vector<double> dphis;
        dphis.reserve(samples.size());
        for (const auto& s : samples)
            if (!s.truncated) dphis.push_back(*s.signed_angle);
        const auto hist = make_histogram(dphis, -M_PI, M_PI, 36);
        const auto gof = chi_square_test(
            hist, [](double a) { return poisson_sphere(0.6, a, 1.2); }, 0.01);
        ok = ok && gof.passed;
        detail << "; S2 chi2=" << fmt(gof.statistic) << "/thr=" << fmt(gof.threshold);
    }
    r.passed = ok;
    r.detail = detail.str();
    return r;
}

// ------------------------------------------------------------------ 6
CriterionResult criterion_mc_exits(const Budget& budget) {
    CriterionResult r{6, "Monte Carlo exit probabilities", false, "", 0.0};
    std::ostringstream detail;
    bool ok = true;

    {  // H^2 annulus
        SimConfig cfg;
        cfg.dimension = 2;
        cfg.step = budget.exit_step_h2;
        cfg.num_paths = budget.exit_paths;
        cfg.seed = budget.seed ^ 0x600ULL;
        const auto est = first_exit_annulus(cfg, 1.0, 0.5, 2.0);
        const double target = exit_prob_h2(1.0, 0.5, 2.0);
        const double pull = std::abs(est.fraction - target) / est.std_error;
        ok = ok && pull < 3.0 && !est.warning;
        detail << "H2 |mc-exact|=" << fmt(std::abs(est.fraction - target)) << " ("
               << fmt(pull) << " sigma)";
    }
    {  // H^3 annulus against the coth form, frozen before the run
        const double coth_form =
            (1.0 / std::tanh(2.0) - 1.0 / std::tanh(1.0)) /
            (1.0 / std::tanh(2.0) - 1.0 / std::tanh(0.5));
        SimConfig cfg;
        cfg.dimension = 3;
        cfg.step = budget.exit_step_h3;
        cfg.num_paths = budget.exit_paths;
        cfg.seed = budget.seed ^ 0x601ULL;
        const auto est = first_exit_annulus(cfg, 1.0, 0.5, 2.0);
        const double pull = std::abs(est.fraction - coth_form) / est.std_error;
        ok = ok && pull < 3.0 && !est.warning &&
             std::abs(exit_prob_hn(3, 1.0, 0.5, 2.0) - coth_form) < 1e-12;
        detail << "; H3 |mc-exact|=" << fmt(std::abs(est.fraction - coth_form)) << " ("
               << fmt(pull) << " sigma)";
    }
    {  // spherical annulus
        SimConfig cfg;
        cfg.step = budget.exit_step_sphere;
        cfg.num_paths = budget.exit_paths;
        cfg.seed = budget.seed ^ 0x602ULL;
        const auto est = spherical_exit_annulus(cfg, 1.2, 1.8, 0.8);
        const double target = exit_prob_sphere(1.2, 1.8, 0.8);
        const double pull = std::abs(est.fraction - target) / est.std_error;
        ok = ok && pull < 3.0 && !est.warning;
        detail << "; S2 |mc-exact|=" << fmt(std::abs(est.fraction - target)) << " ("
               << fmt(pull) << " sigma)";
    }
    r.passed = ok;
    r.detail = detail.str();
    return r;
}

// ------------------------------------------------------------------ 7
CriterionResult criterion_transience(const Budget& budget) {
    CriterionResult r{7, "transience (escape estimate)", false, "", 0.0};
    SimConfig cfg;
    cfg.dimension = 2;
    cfg.step = budget.escape_step;
    cfg.num_paths = budget.escape_paths;
    cfg.seed = budget.seed ^ 0x700ULL;
    cfg.escape_cap = 10.0;
    const auto est = escape_estimate(cfg, 1.5, 0.5);
    const double target = hit_prob_h2(1.5, 0.5);
    const double below_one_sigmas = (1.0 - est.fraction) / est.std_error;
    const double err = std::abs(est.fraction - target);
    const bool agrees = err <= 3.0 * est.std_error + est.bias_bound;
    r.passed = below_one_sigmas > 5.0 && agrees && !est.warning;
    r.detail = "p_hat=" + fmt(est.fraction) + " vs " + fmt(target) + ", |diff|=" + fmt(err) +
               ", budget=" + fmt(3.0 * est.std_error + est.bias_bound) + ", (1-p)/se=" +
               fmt(below_one_sigmas);
    return r;
}

// ------------------------------------------------------------------ 8
CriterionResult criterion_special_functions(const Budget& budget) {
    CriterionResult r{8, "special function suites", false, "", 0.0};
    Xoshiro256pp rng(budget.seed ^ 0x88ULL);
    Worst generating, ortho, f_at_one;

    // generating function sum_k rho^k C_k = (1 - 2 rho t + rho^2)^{-lambda}
    const double rho = 0.3;
    for (double lambda : {0.5, 1.0, 1.5, 2.5}) {
        for (double t : {-0.8, -0.3, 0.2, 0.7, 0.95}) {
            double sum = 0.0, rk = 1.0;
            for (int k = 0; k <= 140; ++k) {
                sum += rk * gegenbauer(k, lambda, t);
                rk *= rho;
            }
            const double closed = std::pow(1.0 - 2.0 * rho * t + rho * rho, -lambda);
            generating.feed(std::abs(sum - closed));
        }
    }
    // orthogonality through quadrature
    for (int n : {3, 4, 5}) {
        const double lambda = 0.5 * (n - 2.0);
        for (int j = 0; j <= 8; ++j) {
            for (int k = j + 1; k <= 8; ++k) {
                const double integral =
                    integrate(
                        [&](double th) {
                            return gegenbauer(j, lambda, std::cos(th)) *
                                   gegenbauer(k, lambda, std::cos(th)) *
                                   std::pow(std::sin(th), 2.0 * lambda);
                        },
                        0.0, M_PI, 1e-10, 20)
                        .value;
                ortho.feed(std::abs(integral));
            }
        }
    }
    // 2F1 at x = 1: series vs Gamma closed form. The direct series at the
    // radius of convergence is the slowest case in the artifact (terms decay
    // like m^{-n}), hence the enlarged term cap.
    SeriesControl at_one_ctrl{1e-10, 2000000};
    for (int n : {3, 4, 5}) {
        for (int k = 0; k <= 10; ++k) {
            const double series = gauss_2f1(k, 1.0 - 0.5 * n, k + 0.5 * n, 1.0, at_one_ctrl);
            const double gamma_form = gauss_2f1_at_one(k, 1.0 - 0.5 * n, k + 0.5 * n);
            f_at_one.feed(std::abs(series - gamma_form));
        }
    }
    r.passed = generating.value < 1e-10 && ortho.value < 1e-8 && f_at_one.value < 1e-9;
    r.detail = "generating " + fmt(generating.value) + " (tol 1e-10), orthogonality " +
               fmt(ortho.value) + " (tol 1e-8), 2F1(1) " + fmt(f_at_one.value) + " (tol 1e-9)";
    return r;
}

// ------------------------------------------------------------------ 9
CriterionResult criterion_harmonicity(const Budget&) {
    CriterionResult r{9, "harmonicity residuals", false, "", 0.0};
    constexpr double kStep = 1e-4;
    Worst worst;

    const auto residual = [&](const std::function<double(double)>& v,
                              const std::function<double(double)>& drift, double at) {
        const double vp = (v(at + kStep) - v(at - kStep)) / (2.0 * kStep);
        const double vpp = (v(at + kStep) - 2.0 * v(at) + v(at - kStep)) / (kStep * kStep);
        return std::abs(vpp + drift(at) * vp);
    };

    for (int n = 2; n <= 8; ++n) {
        const auto v = [n](double e) { return exit_prob_hn(n, e, 0.5, 2.5); };
        const auto drift = [n](double e) { return (n - 1.0) / std::tanh(e); };
        for (double at : {0.9, 1.4, 2.0}) worst.feed(residual(v, drift, at));
    }
    {
        const auto v = [](double rr) { return exit_prob_d2(rr, 0.3, 0.9); };
        const auto drift = [](double rr) { return 1.0 / rr; };
        for (double at : {0.45, 0.6, 0.8}) worst.feed(residual(v, drift, at));
    }
    {
        const auto v = [](double th) { return exit_prob_sphere(th, 2.2, 0.4); };
        const auto drift = [](double th) { return 1.0 / std::tan(th); };
        for (double at : {0.9, 1.4, 1.9}) worst.feed(residual(v, drift, at));
    }
    for (int n : {2, 3, 5}) {
        const auto v = [n](double e) { return exit_prob_euclidean(n, e, 0.5, 2.5); };
        const auto drift = [n](double e) { return (n - 1.0) / e; };
        for (double at : {0.9, 1.4, 2.0}) worst.feed(residual(v, drift, at));
    }
    r.passed = worst.value < 1e-6;
    r.detail = "max |v'' + drift v'| = " + fmt(worst.value) + " (tol 1e-6)";
    return r;
}

using CriterionFn = CriterionResult (*)(const Budget&);

}  // namespace

Budget Budget::fast() {
    Budget b;
    b.kernel_paths /= 10;
    b.exit_paths /= 10;
    b.escape_paths /= 10;
    return b;
}

std::vector<CriterionResult> run(Suite suite, const Budget& budget,
                                 const std::function<void(const CriterionResult&)>& on_result) {
    struct Entry {
        int id;
        const char* name;
        bool analytic;
        CriterionFn fn;
    };
    const std::vector<Entry> table = {
        {1, "kernel normalization", true, criterion_normalization},
        {2, "series vs closed form (H^2)", true, criterion_series_equivalence},
        {3, "limit chain", true, criterion_limits},
        {4, "H^2 <-> D^2 exactness", true, criterion_cross_model},
        {5, "Monte Carlo kernel chi-square", false, criterion_mc_kernels},
        {6, "Monte Carlo exit probabilities", false, criterion_mc_exits},
        {7, "transience (escape estimate)", false, criterion_transience},
        {8, "special function suites", true, criterion_special_functions},
        {9, "harmonicity residuals", true, criterion_harmonicity},
    };
    std::vector<CriterionResult> results;
    for (const auto& entry : table) {
        if (suite == Suite::Kernels && !entry.analytic) continue;
        if (suite == Suite::Exits && entry.analytic) continue;
        const auto start = std::chrono::steady_clock::now();
        CriterionResult res;
        try {
            res = entry.fn(budget);
        } catch (const std::exception& e) {
            res.id = entry.id;
            res.name = entry.name;
            res.passed = false;
            res.detail = std::string("exception: ") + e.what();
        }
        res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (on_result) on_result(res);
        results.push_back(std::move(res));
    }
    return results;
}

}  // namespace hypk::acceptance
