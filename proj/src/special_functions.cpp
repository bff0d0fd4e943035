#include "hypk/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

namespace hypk {

namespace {

// Lanczos coefficients, g = 7.
constexpr double kLanczos[9] = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

bool is_nonpositive_integer(double v) {
    return v <= 0.0 && std::abs(v - std::round(v)) < 1e-12;
}

}  // namespace

double log_gamma(double x) {
    if (!(x > 0.0)) throw std::domain_error("log_gamma: requires x > 0");
    if (x < 0.5) {
        // reflection keeps the Lanczos sum in its accurate range
        return std::log(M_PI / std::sin(M_PI * x)) - log_gamma(1.0 - x);
    }
    const double z = x - 1.0;
    double sum = kLanczos[0];
    for (int i = 1; i < 9; ++i) sum += kLanczos[i] / (z + i);
    const double t = z + 7.5;
    return 0.5 * std::log(2.0 * M_PI) + (z + 0.5) * std::log(t) - t + std::log(sum);
}

double surface_area(int n) {
    // n = 1 (the two-point 0-sphere, Omega_1 = 2) is needed as the numerator
    // of the n = 2 angular normalization
    if (n < 1) throw std::domain_error("surface_area: requires n >= 1");
    return std::exp(std::log(2.0) + 0.5 * n * std::log(M_PI) - log_gamma(0.5 * n));
}

double gegenbauer(int k, double lambda, double x) {
    if (k < 0) throw std::domain_error("gegenbauer: requires k >= 0");
    if (!(lambda > 0.0)) throw std::domain_error("gegenbauer: requires lambda > 0");
    if (std::abs(x) > 1.0) throw std::domain_error("gegenbauer: requires |x| <= 1");
    if (k == 0) return 1.0;
    double prev = 1.0;            // C_0
    double cur = 2.0 * lambda * x;  // C_1
    for (int j = 2; j <= k; ++j) {
        const double next = (2.0 * (j + lambda - 1.0) * x * cur - (j + 2.0 * lambda - 2.0) * prev) / j;
        prev = cur;
        cur = next;
    }
    return cur;
}

double gauss_2f1(double a, double b, double c, double x, SeriesControl ctrl, int* terms_used) {
    if (is_nonpositive_integer(c)) throw std::domain_error("gauss_2f1: c is a nonpositive integer");
    if (x < 0.0 || x > 1.0) throw std::domain_error("gauss_2f1: requires 0 <= x <= 1");
    const double s = c - a - b;
    const bool at_one = (x == 1.0);
    if (at_one && !(s > 0.0)) throw std::domain_error("gauss_2f1: x = 1 requires c - a - b > 0");

    const bool a_poly = is_nonpositive_integer(a);
    const bool b_poly = is_nonpositive_integer(b);
    const long poly_stop =
        a_poly || b_poly
            ? static_cast<long>(-std::round(a_poly ? (b_poly ? std::max(a, b) : a) : b))
            : std::numeric_limits<long>::max();

    double sum = 1.0;
    double term = 1.0;
    for (int m = 0; m < ctrl.max_terms; ++m) {
        if (m >= poly_stop) {
            if (terms_used) *terms_used = m + 1;
            return sum;  // polynomial case: all further terms are exactly zero
        }
        term *= (a + m) * (b + m) / ((c + m) * (1.0 + m)) * x;
        sum += term;
        if (term == 0.0) {
            if (terms_used) *terms_used = m + 1;
            return sum;
        }
        // Tail estimate. For x < 1 the term ratio tends to x, so the tail is
        // close to geometric; at x = 1 the terms decay like m^{-s-1} and the
        // integral comparison gives |t| (m+1)/s.
        double tail;
        if (at_one) {
            tail = std::abs(term) * 1.5 * (m + 2.0) / s;
        } else {
            const double f_next = std::abs((a + m + 1.0) * (b + m + 1.0) /
                                           ((c + m + 1.0) * (m + 2.0)));
            const double drift = std::max(0.0, a + b - c - 1.0) / (m + 2.0);
            const double rho = std::min(0.9999, x * std::max(1.0 + drift, f_next));
            tail = std::abs(term) * rho / (1.0 - rho);
        }
        if (tail <= ctrl.tol * std::max(std::abs(sum), 1e-300) && m >= 1) {
            if (terms_used) *terms_used = m + 2;
            return sum;
        }
    }
    throw ConvergenceError("gauss_2f1: series did not converge within max_terms", sum,
                           ctrl.max_terms);
}

double gauss_2f1_at_one(double a, double b, double c) {
    const double s = c - a - b;
    if (!(s > 0.0)) throw std::domain_error("gauss_2f1_at_one: requires c - a - b > 0");
    if (!(c > 0.0 && c - a > 0.0 && c - b > 0.0))
        throw std::domain_error("gauss_2f1_at_one: Gamma arguments must be positive");
    return std::exp(log_gamma(c) + log_gamma(s) - log_gamma(c - a) - log_gamma(c - b));
}

}  // namespace hypk
