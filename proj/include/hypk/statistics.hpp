#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "hypk/simulation.hpp"

namespace hypk {

// Goodness-of-fit verdict. passed <=> statistic < threshold.
struct GofReport {
    enum class Method { KS, ChiSquare };
    double statistic = 0.0;
    double threshold = 0.0;
    long n_samples = 0;
    bool passed = false;
    Method method = Method::KS;
    int degrees_of_freedom = 0;  // chi-square only
};

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int evaluations = 0;
};

// Composite Simpson with interval halving (trapezoid refinement plus the
// standard Richardson combination). Stops when two successive levels agree
// within tol (absolute or relative, whichever is larger); throws
// ConvergenceError carrying the best estimate otherwise.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double tol = 1e-12, int max_levels = 20);

// One-sided inverse of the standard normal CDF (Acklam's rational
// approximation, |relative error| < 1.2e-9).
double normal_quantile(double p);

// chi-square quantile by Wilson-Hilferty.
double chi_square_quantile(double p, int dof);

// Kolmogorov-Smirnov test of sorted samples against an analytic CDF, using
// the asymptotic threshold c(alpha)/sqrt(N) with c(0.01) = 1.628.
GofReport ks_test(const std::vector<double>& sorted_samples,
                  const std::function<double(double)>& cdf, double alpha);

// Two-sample Kolmogorov-Smirnov with the asymptotic threshold scaled by the
// effective sample size.
GofReport ks_test_two_sample(std::vector<double> a, std::vector<double> b, double alpha);

// Pearson chi-square test of a histogram against a density. Expected counts
// come from per-bin quadrature of the density; adjacent bins are merged
// until every expected count is at least 5.
GofReport chi_square_test(const EmpiricalDistribution& hist,
                          const std::function<double(double)>& density, double alpha);

// Normal-approximation confidence interval successes/trials +- z * SE,
// clamped to [0,1]. Requires trials >= 1000.
std::pair<double, double> binomial_ci(long successes, long trials, double z);

}  // namespace hypk
