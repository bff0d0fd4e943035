#pragma once

#include <stdexcept>
#include <string>

namespace hypk {

// Truncation control for the hypergeometric and Gegenbauer series.
struct SeriesControl {
    double tol = 1e-12;     // relative tail tolerance
    int max_terms = 200000;
};

// Raised when a series fails to reach its tolerance within max_terms.
// Carries the last partial sum so callers can still inspect it.
class ConvergenceError : public std::runtime_error {
  public:
    ConvergenceError(const std::string& what, double partial_sum, int terms_used)
        : std::runtime_error(what), partial_sum_(partial_sum), terms_used_(terms_used) {}

    double partial_sum() const { return partial_sum_; }
    int terms_used() const { return terms_used_; }

  private:
    double partial_sum_;
    int terms_used_;
};

// log Gamma(x) for x > 0, Lanczos approximation (g = 7, 9 coefficients).
double log_gamma(double x);

// Surface area of the unit sphere in R^n: Omega_n = 2 pi^{n/2} / Gamma(n/2).
double surface_area(int n);

// Gegenbauer (ultraspherical) polynomial C_k^{(lambda)}(x) by the three-term
// recurrence  k C_k = 2(k+lambda-1) x C_{k-1} - (k+2 lambda-2) C_{k-2}.
// Requires lambda > 0 and |x| <= 1.
double gegenbauer(int k, double lambda, double x);

// Gauss hypergeometric series 2F1(a,b;c;x) for 0 <= x <= 1 by direct
// summation. Terminates exactly when a or b is a nonpositive integer;
// otherwise stops once the tail bound drops below ctrl.tol relative to the
// partial sum. At x = 1 requires c - a - b > 0. Throws ConvergenceError when
// max_terms is exhausted first. terms_used, when non-null, receives the
// number of summed terms.
double gauss_2f1(double a, double b, double c, double x, SeriesControl ctrl = {},
                 int* terms_used = nullptr);

// 2F1(a,b;c;1) through the Gamma closed form
// Gamma(c) Gamma(c-a-b) / (Gamma(c-a) Gamma(c-b)); all four arguments must
// be positive. Independent of the series path above.
double gauss_2f1_at_one(double a, double b, double c);

}  // namespace hypk
