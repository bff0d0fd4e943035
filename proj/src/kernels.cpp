#include "hypk/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace hypk {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;
constexpr double kCoshSwitch = 300.0;  // above this, cosh forms are at overflow risk

void require_radii_h2(double eta, double eta_bar, const char* who) {
    if (!(eta >= 0.0) || !(eta < eta_bar))
        throw std::domain_error(std::string(who) + ": requires 0 <= eta < eta_bar");
}

// C_k^{(lambda)}(1) = binom(k + 2 lambda - 1, k), valid for lambda = (n-2)/2.
double gegenbauer_at_one(int k, int n) {
    if (k == 0) return 1.0;
    return std::exp(log_gamma(k + n - 2.0) - log_gamma(k + 1.0) - log_gamma(n - 2.0));
}

}  // namespace

double poisson_h2(double eta, double dalpha, double eta_bar) {
    require_radii_h2(eta, eta_bar, "poisson_h2");
    if (eta_bar > kCoshSwitch) {
        const double t = std::tanh(0.5 * eta);
        const double tb = std::tanh(0.5 * eta_bar);
        const double denom = (tb - t) * (tb - t) + 4.0 * t * tb * std::pow(std::sin(0.5 * dalpha), 2);
        return (tb * tb - t * t) / (kTwoPi * denom);
    }
    const double sh = std::sin(0.5 * dalpha);
    const double numer = 2.0 * std::sinh(0.5 * (eta_bar + eta)) * std::sinh(0.5 * (eta_bar - eta));
    const double denom = 2.0 * std::pow(std::sinh(0.5 * (eta_bar - eta)), 2) +
                         2.0 * std::sinh(eta) * std::sinh(eta_bar) * sh * sh;
    return numer / (kTwoPi * denom);
}

KernelEvaluation poisson_h2_series(double eta, double dalpha, double eta_bar, int m_terms) {
    require_radii_h2(eta, eta_bar, "poisson_h2_series");
    if (m_terms < 0) throw std::domain_error("poisson_h2_series: requires M >= 0");
    const double q = std::tanh(0.5 * eta) / std::tanh(0.5 * eta_bar);
    double sum = 1.0 / kTwoPi;
    double qm = 1.0;
    for (int m = 1; m <= m_terms; ++m) {
        qm *= q;
        sum += std::cos(m * dalpha) * qm / M_PI;
    }
    const double tail = qm * q / (M_PI * (1.0 - q));
    return KernelEvaluation{sum, m_terms, tail};
}

double poisson_h2_boundary(double eta, double dalpha) {
    if (!(eta >= 0.0)) throw std::domain_error("poisson_h2_boundary: requires eta >= 0");
    const double sh = std::sin(0.5 * dalpha);
    // cosh eta - sinh eta cos = exp(-eta) + 2 sinh(eta) sin^2(dalpha/2)
    const double denom = std::exp(-eta) + 2.0 * std::sinh(eta) * sh * sh;
    return 1.0 / (kTwoPi * denom);
}

double cauchy_hitting_density(double x, double y, double x_bar) {
    if (!(y > 0.0)) throw std::domain_error("cauchy_hitting_density: requires y > 0");
    const double dx = x_bar - x;
    return y / (M_PI * (dx * dx + y * y));
}

double poisson_h2_cartesian(double x, double y, double x_bar, double y_bar) {
    if (!(y > 0.0) || y_bar < 0.0)
        throw std::domain_error("poisson_h2_cartesian: requires y > 0 and y_bar >= 0");
    const double dx = x - x_bar;
    const double dy = y - y_bar;
    const double d2 = dx * dx + dy * dy;
    if (d2 == 0.0) throw std::domain_error("poisson_h2_cartesian: coincident points");
    const double numer = (x_bar * x_bar + y_bar * y_bar) * y - (x * x + y * y) * y_bar + y - y_bar;
    return numer / (kTwoPi * d2);
}

void PoissonHnSeries::build(double eta, double eta_bar, bool infinite, SeriesControl ctrl) {
    const int n = n_;
    angular_norm_ = surface_area(n - 1) / surface_area(n);
    const double t = std::tanh(0.5 * eta);
    const double tb = infinite ? 1.0 : std::tanh(0.5 * eta_bar);
    const double q = t / tb;
    const double b = 1.0 - 0.5 * n;

    // Envelope U_k >= |A_k| C_k(1): the numerator 2F1 lies in (0,1] and,
    // by the Euler transform F = (1-u)^{n-1} F(n/2, k+n-1; k+n/2; u) with
    // all-positive coefficients, the denominator 2F1 is at least
    // (1-tb^2)^{n-1}. In the eta_bar -> infinity case the denominator is the
    // Gamma closed form and the envelope carries its growth ratio instead.
    // All one-step ratio factors decrease in k, so once the ratio drops
    // below one the tail is geometrically bounded.
    const auto env_ratio = [&](int k) {
        return q * ((k + 0.5 * n) / (k + 0.5 * (n - 2.0))) * ((n + k - 2.0) / (k + 1.0)) *
               (infinite ? (k + n - 1.0) / (k + 0.5 * n) : 1.0);
    };
    double envelope = infinite ? 1.0 : std::pow(1.0 - tb * tb, 1.0 - n);  // U_0

    std::vector<double> coeff;
    coeff.reserve(32);
    double sum_abs = 0.0;  // sum of |A_k| C_k(1), scales the 2F1 stopping error
    double tk = 1.0;       // t^k
    double tbk = 1.0;      // tb^k
    for (int k = 0;; ++k) {
        if (k >= ctrl.max_terms)
            throw ConvergenceError("poisson_hn: angular series did not converge", 0.0, k);
        const double c = k + 0.5 * n;
        const double fnum = gauss_2f1(k, b, c, t * t, ctrl);
        const double fden = infinite ? gauss_2f1_at_one(k, b, c) : gauss_2f1(k, b, c, tb * tb, ctrl);
        const double weight = 2.0 * k / (n - 2.0) + 1.0;
        const double a_k = weight * (tk * fnum) / (tbk * fden);
        coeff.push_back(a_k);
        sum_abs += std::abs(a_k) * gegenbauer_at_one(k, n);
        tk *= t;
        tbk *= tb;

        const double next_envelope = envelope * env_ratio(k);
        const double next_ratio = env_ratio(k + 1);
        if (next_ratio < 1.0) {
            const double tail = next_envelope / (1.0 - next_ratio);
            if (k >= 2 && tail <= ctrl.tol) {
                tail_bound_ = tail;
                break;
            }
        }
        envelope = next_envelope;
        if (t == 0.0) {  // started at the center: only k = 0 contributes
            tail_bound_ = 0.0;
            break;
        }
    }
    // each coefficient carries two hypergeometric evaluations stopped at
    // relative tolerance ctrl.tol
    tail_bound_ += 3.0 * ctrl.tol * sum_abs;
    coeff_ = Eigen::Map<Eigen::ArrayXd>(coeff.data(), static_cast<Eigen::Index>(coeff.size()));
}

PoissonHnSeries::PoissonHnSeries(int n, double eta, double eta_bar, SeriesControl ctrl) : n_(n) {
    if (n < 3) throw std::domain_error("poisson_hn: requires n >= 3");
    require_radii_h2(eta, eta_bar, "poisson_hn");
    build(eta, eta_bar, false, ctrl);
}

PoissonHnSeries PoissonHnSeries::boundary_limit(int n, double eta, SeriesControl ctrl) {
    if (n < 3) throw std::domain_error("poisson_hn_infinite: requires n >= 3");
    if (!(eta >= 0.0)) throw std::domain_error("poisson_hn_infinite: requires eta >= 0");
    PoissonHnSeries s;
    s.n_ = n;
    s.build(eta, 0.0, true, ctrl);
    return s;
}

KernelEvaluation PoissonHnSeries::operator()(double psi) const {
    if (psi < 0.0 || psi > M_PI)
        throw std::domain_error("poisson_hn: requires psi in [0, pi]");
    const double lambda = 0.5 * (n_ - 2.0);
    const double xc = std::cos(psi);
    // one upward pass of the Gegenbauer recurrence across all cached terms
    double sum = coeff_(0);
    double prev = 1.0;
    double cur = 2.0 * lambda * xc;
    for (int k = 1; k < coeff_.size(); ++k) {
        sum += coeff_(k) * cur;
        const double next = (2.0 * (k + lambda) * xc * cur - (k + 2.0 * lambda - 1.0) * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    const double geom = angular_norm_ * std::pow(std::sin(psi), n_ - 2.0);
    return KernelEvaluation{geom * sum, static_cast<int>(coeff_.size()), geom * tail_bound_};
}

KernelEvaluation poisson_hn(int n, double eta, double eta_bar, double psi, SeriesControl ctrl) {
    return PoissonHnSeries(n, eta, eta_bar, ctrl)(psi);
}

KernelEvaluation poisson_hn_infinite(int n, double eta, double psi, SeriesControl ctrl) {
    return PoissonHnSeries::boundary_limit(n, eta, ctrl)(psi);
}

double euclidean_poisson_nd(int n, double rho, double psi) {
    if (n < 2) throw std::domain_error("euclidean_poisson_nd: requires n >= 2");
    if (rho < 0.0 || rho >= 1.0)
        throw std::domain_error("euclidean_poisson_nd: requires 0 <= rho < 1");
    const double denom = 1.0 - 2.0 * rho * std::cos(psi) + rho * rho;
    const double norm = surface_area(n - 1) / surface_area(n);
    return norm * (1.0 - rho * rho) / std::pow(denom, 0.5 * n) *
           std::pow(std::sin(psi), n - 2.0);
}

double cauchy_type_hn(int n, const Eigen::VectorXd& x, double y) {
    if (n < 2) throw std::domain_error("cauchy_type_hn: requires n >= 2");
    if (x.size() != n - 1) throw std::domain_error("cauchy_type_hn: x must have n-1 components");
    if (!(y > 0.0)) throw std::domain_error("cauchy_type_hn: requires y > 0");
    const double norm = std::exp(log_gamma(n - 1.0) - 0.5 * (n - 1.0) * std::log(M_PI) -
                                 log_gamma(0.5 * (n - 1.0)));
    return norm * std::pow(y / (y * y + x.squaredNorm()), n - 1.0);
}

double poisson_d2(double r, double dtheta, double r_bar) {
    if (!(r >= 0.0) || !(r < r_bar) || !(r_bar < 1.0))
        throw std::domain_error("poisson_d2: requires 0 <= r < r_bar < 1");
    const double sh = std::sin(0.5 * dtheta);
    const double denom = (r_bar - r) * (r_bar - r) + 4.0 * r * r_bar * sh * sh;
    return (r_bar * r_bar - r * r) / (kTwoPi * denom);
}

double poisson_d2_boundary(double r, double dtheta) {
    if (!(r >= 0.0) || !(r < 1.0))
        throw std::domain_error("poisson_d2_boundary: requires 0 <= r < 1");
    const double sh = std::sin(0.5 * dtheta);
    const double denom = (1.0 - r) * (1.0 - r) + 4.0 * r * sh * sh;
    return (1.0 - r * r) / (kTwoPi * denom);
}

double poisson_sphere(double theta, double dphi, double theta_bar) {
    if (!(theta >= 0.0) || !(theta < theta_bar) || !(theta_bar < M_PI))
        throw std::domain_error("poisson_sphere: requires 0 <= theta < theta_bar < pi");
    const double sh = std::sin(0.5 * dphi);
    const double numer = 2.0 * std::sin(0.5 * (theta_bar + theta)) * std::sin(0.5 * (theta_bar - theta));
    const double denom = 2.0 * std::pow(std::sin(0.5 * (theta_bar - theta)), 2) +
                         2.0 * std::sin(theta) * std::sin(theta_bar) * sh * sh;
    return numer / (kTwoPi * denom);
}

}  // namespace hypk
