#include "hypk/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hypk/special_functions.hpp"

namespace hypk {

namespace {

// asymptotic Kolmogorov critical values; 0.01 entry pinned to 1.628
double ks_critical(double alpha) {
    if (std::abs(alpha - 0.01) < 1e-12) return 1.628;
    if (std::abs(alpha - 0.05) < 1e-12) return 1.358;
    if (std::abs(alpha - 0.10) < 1e-12) return 1.224;
    return std::sqrt(-0.5 * std::log(0.5 * alpha));
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b, double tol,
                           int max_levels) {
    if (!(b > a)) throw std::domain_error("integrate: requires b > a");
    const double h = b - a;
    // a 32-interval base keeps oscillatory integrands from aliasing into a
    // spuriously converged pair of coarse levels
    long intervals = 32;
    double trap = 0.5 * (f(a) + f(b));
    for (long i = 1; i < intervals; ++i) trap += f(a + h * static_cast<double>(i) / intervals);
    trap *= h / static_cast<double>(intervals);
    int evals = static_cast<int>(intervals) + 1;
    double simpson_prev = trap;
    for (int level = 1; level <= max_levels; ++level) {
        // refine the trapezoid estimate with the midpoints of every interval
        double mid_sum = 0.0;
        const double step = h / static_cast<double>(intervals);
        for (long i = 0; i < intervals; ++i) mid_sum += f(a + (i + 0.5) * step);
        evals += static_cast<int>(intervals);
        const double trap_next = 0.5 * (trap + step * mid_sum);
        const double simpson = (4.0 * trap_next - trap) / 3.0;
        trap = trap_next;
        intervals *= 2;
        const double diff = std::abs(simpson - simpson_prev);
        if (level >= 3 && diff < std::max(tol, tol * std::abs(simpson)))
            return QuadratureResult{simpson, diff, evals};
        simpson_prev = simpson;
    }
    throw ConvergenceError("integrate: did not reach tolerance", simpson_prev, evals);
}

double normal_quantile(double p) {
    if (!(p > 0.0) || !(p < 1.0)) throw std::domain_error("normal_quantile: requires 0 < p < 1");
    // Acklam's algorithm
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double p_low = 0.02425;
    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (p > 1.0 - p_low) return -normal_quantile(1.0 - p);
    const double q = p - 0.5;
    const double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

double chi_square_quantile(double p, int dof) {
    if (dof < 1) throw std::domain_error("chi_square_quantile: requires dof >= 1");
    const double z = normal_quantile(p);
    const double t = 2.0 / (9.0 * dof);
    const double base = 1.0 - t + z * std::sqrt(t);
    return dof * base * base * base;
}

GofReport ks_test(const std::vector<double>& sorted_samples,
                  const std::function<double(double)>& cdf, double alpha) {
    const long n = static_cast<long>(sorted_samples.size());
    if (n < 100) throw std::domain_error("ks_test: requires at least 100 samples");
    if (!std::is_sorted(sorted_samples.begin(), sorted_samples.end()))
        throw std::invalid_argument("ks_test: samples must be sorted");
    double d = 0.0;
    for (long i = 0; i < n; ++i) {
        const double F = cdf(sorted_samples[i]);
        d = std::max(d, std::abs(F - static_cast<double>(i) / n));
        d = std::max(d, std::abs(static_cast<double>(i + 1) / n - F));
    }
    GofReport report;
    report.method = GofReport::Method::KS;
    report.statistic = d;
    report.threshold = ks_critical(alpha) / std::sqrt(static_cast<double>(n));
    report.n_samples = n;
    report.passed = d < report.threshold;
    return report;
}

GofReport ks_test_two_sample(std::vector<double> a, std::vector<double> b, double alpha) {
    if (a.size() < 100 || b.size() < 100)
        throw std::domain_error("ks_test_two_sample: requires at least 100 samples each");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    double d = 0.0;
    std::size_t ia = 0, ib = 0;
    while (ia < a.size() && ib < b.size()) {
        if (a[ia] <= b[ib])
            ++ia;
        else
            ++ib;
        d = std::max(d, std::abs(static_cast<double>(ia) / na - static_cast<double>(ib) / nb));
    }
    GofReport report;
    report.method = GofReport::Method::KS;
    report.statistic = d;
    report.threshold = ks_critical(alpha) * std::sqrt((na + nb) / (na * nb));
    report.n_samples = static_cast<long>(a.size() + b.size());
    report.passed = d < report.threshold;
    return report;
}

GofReport chi_square_test(const EmpiricalDistribution& hist,
                          const std::function<double(double)>& density, double alpha) {
    const std::size_t bins = hist.counts.size();
    if (bins == 0 || hist.total == 0) throw std::domain_error("chi_square_test: empty histogram");
    if (hist.bin_edges.size() != bins + 1)
        throw std::domain_error("chi_square_test: inconsistent bin edges");

    std::vector<double> expected(bins);
    for (std::size_t i = 0; i < bins; ++i) {
        expected[i] =
            hist.total * integrate(density, hist.bin_edges[i], hist.bin_edges[i + 1], 1e-10).value;
    }

    // merge adjacent bins left to right until every expected count is >= 5
    std::vector<double> exp_merged;
    std::vector<double> obs_merged;
    double e_acc = 0.0, o_acc = 0.0;
    for (std::size_t i = 0; i < bins; ++i) {
        e_acc += expected[i];
        o_acc += static_cast<double>(hist.counts[i]);
        if (e_acc >= 5.0) {
            exp_merged.push_back(e_acc);
            obs_merged.push_back(o_acc);
            e_acc = 0.0;
            o_acc = 0.0;
        }
    }
    if (e_acc > 0.0 || o_acc > 0.0) {
        if (exp_merged.empty()) throw std::domain_error("chi_square_test: too few expected counts");
        exp_merged.back() += e_acc;
        obs_merged.back() += o_acc;
    }
    if (exp_merged.size() < 2) throw std::domain_error("chi_square_test: fewer than 2 usable bins");

    double stat = 0.0;
    for (std::size_t i = 0; i < exp_merged.size(); ++i) {
        const double diff = obs_merged[i] - exp_merged[i];
        stat += diff * diff / exp_merged[i];
    }
    GofReport report;
    report.method = GofReport::Method::ChiSquare;
    report.statistic = stat;
    report.degrees_of_freedom = static_cast<int>(exp_merged.size()) - 1;
    report.threshold = chi_square_quantile(1.0 - alpha, report.degrees_of_freedom);
    report.n_samples = hist.total;
    report.passed = stat < report.threshold;
    return report;
}

std::pair<double, double> binomial_ci(long successes, long trials, double z) {
    if (trials < 1000) throw std::domain_error("binomial_ci: requires trials >= 1000");
    if (successes < 0 || successes > trials) throw std::domain_error("binomial_ci: bad successes");
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    // variance floored at one pseudo-count so 0/N and N/N still get a width
    const double var = std::max(p * (1.0 - p), (1.0 / n) * (1.0 - 1.0 / n));
    const double half = z * std::sqrt(var / n);
    return {std::max(0.0, p - half), std::min(1.0, p + half)};
}

}  // namespace hypk
