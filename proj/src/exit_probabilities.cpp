#include "hypk/exit_probabilities.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "hypk/special_functions.hpp"

namespace hypk {

namespace {

constexpr int kMaxDimension = 30;
constexpr double kBoundarySnap = 1e-12;

void require_annulus(double v, double lo, double hi, const char* who) {
    // the closure is accepted: starts on a boundary snap to the exact 0/1
    if (!(lo > 0.0) || !(lo < hi) || !(v >= lo) || !(v <= hi))
        throw std::domain_error(std::string(who) + ": requires inner <= start <= outer with inner > 0");
}

void require_dimension(int n, const char* who) {
    if (n < 2 || n > kMaxDimension)
        throw std::domain_error(std::string(who) + ": dimension out of range [2, 30]");
}

// log(m!!) through log-Gamma; m >= 0.
double log_double_factorial(int m) {
    if (m <= 0) return 0.0;
    if (m % 2 == 0) {
        const double half = m / 2.0;
        return half * std::log(2.0) + log_gamma(half + 1.0);
    }
    return log_gamma(m + 1.0) - 0.5 * (m - 1) * std::log(2.0) - log_gamma(0.5 * (m + 1));
}

double log_tanh_half(double eta) { return std::log(std::tanh(0.5 * eta)); }

// Limit of radial_potential_hn at eta -> infinity (finite for odd n >= 3).
double potential_limit_hn(int n) {
    if (n == 2 || n % 2 == 0) return 0.0;
    const int k_top = (n - 3) / 2;  // the coth term survives
    const double w = (k_top == 0) ? 1.0 / (n - 2.0) : c_coeff(n, k_top);
    return ((k_top % 2 == 0) ? -1.0 : 1.0) * w;
}

double ratio_of_differences(double v, double v1, double v2, double start, double lo, double hi) {
    if (std::abs(start - lo) < kBoundarySnap) return 1.0;
    if (std::abs(start - hi) < kBoundarySnap) return 0.0;
    return (v2 - v) / (v2 - v1);
}

}  // namespace

double exit_prob_h2(double eta, double eta1, double eta2) {
    require_annulus(eta, eta1, eta2, "exit_prob_h2");
    return ratio_of_differences(log_tanh_half(eta), log_tanh_half(eta1), log_tanh_half(eta2),
                                eta, eta1, eta2);
}

double hit_prob_h2(double eta, double eta1) {
    if (!(eta1 > 0.0) || !(eta1 <= eta))
        throw std::domain_error("hit_prob_h2: requires 0 < eta1 <= eta");
    if (std::abs(eta - eta1) < kBoundarySnap) return 1.0;
    return log_tanh_half(eta) / log_tanh_half(eta1);
}

double c_coeff(int n, int k) {
    if (n < 3 || n > kMaxDimension) throw std::domain_error("c_coeff: requires 3 <= n <= 30");
    const int k_max = (n % 2 == 1) ? (n - 3) / 2 : (n - 4) / 2;
    if (k < 0 || k > k_max) throw std::domain_error("c_coeff: k out of range");
    if (k == 0) return 1.0;
    double value = 1.0;
    for (int j = 1; j <= k; ++j) value *= n - 2.0 * j - 1.0;
    for (int j = 0; j <= k; ++j) value /= n - 2.0 * j - 2.0;
    return value;
}

double radial_potential_hn(int n, double eta) {
    require_dimension(n, "radial_potential_hn");
    if (!(eta > 0.0)) throw std::domain_error("radial_potential_hn: requires eta > 0");
    if (n == 2) return log_tanh_half(eta);
    const int k_max = (n % 2 == 1) ? (n - 3) / 2 : (n - 4) / 2;
    const double ch = std::cosh(eta);
    const double sh = std::sinh(eta);
    double sum = 0.0;
    for (int k = 0; k <= k_max; ++k) {
        const double w = (k == 0) ? 1.0 / (n - 2.0) : c_coeff(n, k);
        const double sign = (k % 2 == 0) ? -1.0 : 1.0;  // (-1)^{k-1}
        sum += sign * w * ch / std::pow(sh, n - 2 * k - 2);
    }
    if (n % 2 == 0) {
        const double dfr = std::exp(log_double_factorial(n - 3) - log_double_factorial(n - 2));
        const double sign = ((n - 2) / 2 % 2 == 0) ? 1.0 : -1.0;  // (-1)^{(n-2)/2}
        sum += sign * dfr * log_tanh_half(eta);
    }
    return sum;
}

double exit_prob_hn(int n, double eta, double eta1, double eta2) {
    require_dimension(n, "exit_prob_hn");
    if (n == 2) return exit_prob_h2(eta, eta1, eta2);
    require_annulus(eta, eta1, eta2, "exit_prob_hn");
    return ratio_of_differences(radial_potential_hn(n, eta), radial_potential_hn(n, eta1),
                                radial_potential_hn(n, eta2), eta, eta1, eta2);
}

double hit_prob_hn(int n, double eta, double eta1) {
    require_dimension(n, "hit_prob_hn");
    if (n == 2) return hit_prob_h2(eta, eta1);
    if (!(eta1 > 0.0) || !(eta1 <= eta))
        throw std::domain_error("hit_prob_hn: requires 0 < eta1 <= eta");
    if (std::abs(eta - eta1) < kBoundarySnap) return 1.0;
    const double v_inf = potential_limit_hn(n);
    return (v_inf - radial_potential_hn(n, eta)) / (v_inf - radial_potential_hn(n, eta1));
}

double exit_prob_d2(double r, double r1, double r2) {
    if (!(r1 > 0.0) || !(r1 <= r) || !(r <= r2) || !(r2 < 1.0) || !(r1 < r2))
        throw std::domain_error("exit_prob_d2: requires 0 < r1 <= r <= r2 < 1");
    return ratio_of_differences(std::log(r), std::log(r1), std::log(r2), r, r1, r2);
}

double hit_prob_d2(double r, double r1) {
    if (!(r1 > 0.0) || !(r1 <= r) || !(r < 1.0))
        throw std::domain_error("hit_prob_d2: requires 0 < r1 <= r < 1");
    return std::log(r) / std::log(r1);
}

double exit_prob_sphere(double theta, double theta1, double theta2) {
    if (!(theta2 > 0.0) || !(theta2 <= theta) || !(theta <= theta1) || !(theta1 < M_PI) ||
        !(theta2 < theta1))
        throw std::domain_error("exit_prob_sphere: requires 0 < theta2 <= theta <= theta1 < pi");
    const auto log_tan_half = [](double t) { return std::log(std::tan(0.5 * t)); };
    // exit through the theta1 circle first; boundary roles are swapped
    // relative to the hyperbolic annulus (theta1 is the far colatitude)
    if (std::abs(theta - theta1) < kBoundarySnap) return 1.0;
    if (std::abs(theta - theta2) < kBoundarySnap) return 0.0;
    return (log_tan_half(theta2) - log_tan_half(theta)) /
           (log_tan_half(theta2) - log_tan_half(theta1));
}

double exit_prob_euclidean(int n, double eta, double eta1, double eta2) {
    require_dimension(n, "exit_prob_euclidean");
    require_annulus(eta, eta1, eta2, "exit_prob_euclidean");
    if (n == 2)
        return ratio_of_differences(std::log(eta), std::log(eta1), std::log(eta2), eta, eta1, eta2);
    const auto pot = [n](double r) { return std::pow(r, 2.0 - n); };
    // pot is decreasing; the same ratio of differences still satisfies the
    // boundary conditions v(eta1) = 1, v(eta2) = 0
    return ratio_of_differences(pot(eta), pot(eta1), pot(eta2), eta, eta1, eta2);
}

}  // namespace hypk
