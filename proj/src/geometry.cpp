#include "hypk/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace hypk {

namespace {

void require_valid(const HalfSpacePoint& p, const char* who) {
    if (!(p.y > 0.0)) throw std::domain_error(std::string(who) + ": requires y > 0");
    if (!p.x.allFinite() || !std::isfinite(p.y))
        throw std::domain_error(std::string(who) + ": coordinates must be finite");
}

double clamp_unit(double v) { return v < -1.0 ? -1.0 : (v > 1.0 ? 1.0 : v); }

double acosh_clamped(double w) { return std::acosh(w < 1.0 ? 1.0 : w); }

}  // namespace

HalfSpacePoint::HalfSpacePoint() : x(Eigen::VectorXd::Zero(1)) {}

HalfSpacePoint::HalfSpacePoint(double x0, double y0) : x(1), y(y0) { x(0) = x0; }

HalfSpacePoint::HalfSpacePoint(Eigen::VectorXd x0, double y0) : x(std::move(x0)), y(y0) {}

HalfSpacePoint HalfSpacePoint::origin(int n) {
    if (n < 2) throw std::domain_error("HalfSpacePoint::origin: requires n >= 2");
    return HalfSpacePoint(Eigen::VectorXd::Zero(n - 1), 1.0);
}

PolarPoint::PolarPoint() : angles(Eigen::VectorXd::Zero(1)) {}

PolarPoint::PolarPoint(double eta0, double alpha0) : eta(eta0), angles(1) {
    angles(0) = normalize_angle(alpha0);
}

double normalize_angle(double a) {
    double r = std::remainder(a, 2.0 * M_PI);
    if (r <= -M_PI) r += 2.0 * M_PI;
    return r;
}

double hyperbolic_distance(const HalfSpacePoint& a, const HalfSpacePoint& b) {
    require_valid(a, "hyperbolic_distance");
    require_valid(b, "hyperbolic_distance");
    if (a.x.size() != b.x.size())
        throw std::domain_error("hyperbolic_distance: dimension mismatch");
    const double dy = a.y - b.y;
    const double sq = (a.x - b.x).squaredNorm() + dy * dy;
    return acosh_clamped(1.0 + sq / (2.0 * a.y * b.y));
}

HalfSpacePoint polar_to_halfspace_h2(const PolarPoint& p) {
    if (p.eta < 0.0) throw std::domain_error("polar_to_halfspace_h2: requires eta >= 0");
    const double ch = std::cosh(p.eta);
    const double sh = std::sinh(p.eta);
    const double denom = ch - sh * std::sin(p.alpha());  // >= exp(-eta) > 0
    return HalfSpacePoint(sh * std::cos(p.alpha()) / denom, 1.0 / denom);
}

PolarPoint halfspace_to_polar_h2(const HalfSpacePoint& z) {
    require_valid(z, "halfspace_to_polar_h2");
    if (z.x.size() != 1) throw std::domain_error("halfspace_to_polar_h2: requires n = 2");
    const double x = z.x(0);
    const double rho2 = x * x + z.y * z.y;
    const double eta = acosh_clamped((rho2 + 1.0) / (2.0 * z.y));
    const double sc = x / z.y;                   // sinh(eta) cos(alpha)
    const double ss = (rho2 - 1.0) / (2.0 * z.y);  // sinh(eta) sin(alpha)
    const double alpha = (eta == 0.0) ? 0.0 : std::atan2(ss, sc);
    return PolarPoint(eta, alpha);
}

DiskPoint h2_to_disk(const PolarPoint& p) {
    if (p.eta < 0.0) throw std::domain_error("h2_to_disk: requires eta >= 0");
    return DiskPoint{std::tanh(0.5 * p.eta), normalize_angle(p.alpha())};
}

PolarPoint disk_to_h2(const DiskPoint& q) {
    if (q.r < 0.0 || q.r >= 1.0) throw std::domain_error("disk_to_h2: requires 0 <= r < 1");
    return PolarPoint(2.0 * std::atanh(q.r), q.theta);
}

double carnot_hyperbolic(double eta, double eta_bar, double psi) {
    if (eta < 0.0 || eta_bar < 0.0)
        throw std::domain_error("carnot_hyperbolic: requires eta, eta_bar >= 0");
    const double shalf = std::sin(0.5 * psi);
    // cosh(eta - eta_bar) + 2 sinh(eta) sinh(eta_bar) sin^2(psi/2): same cosh
    // rule, free of cancellation near psi = 0.
    const double w = std::cosh(eta - eta_bar) +
                     2.0 * std::sinh(eta) * std::sinh(eta_bar) * shalf * shalf;
    return acosh_clamped(w);
}

double angle_from_carnot(double eta, double eta_bar, double eta_hat) {
    if (!(eta > 0.0) || !(eta_bar > 0.0))
        throw std::domain_error("angle_from_carnot: angle undefined for zero side");
    // cos psi = (cosh eta cosh eta_bar - cosh eta_hat) / (sinh eta sinh eta_bar),
    // rewritten through product form to avoid cancellation of large cosh terms.
    const double num = 2.0 * std::sinh(0.5 * (eta_hat + eta - eta_bar)) *
                       std::sinh(0.5 * (eta_hat - eta + eta_bar));
    const double cpsi = 1.0 - num / (std::sinh(eta) * std::sinh(eta_bar));
    return std::acos(clamp_unit(cpsi));
}

double carnot_spherical(double theta, double theta_bar, double dphi) {
    const double c = std::cos(theta) * std::cos(theta_bar) +
                     std::sin(theta) * std::sin(theta_bar) * std::cos(dphi);
    return std::acos(clamp_unit(c));
}

double boundary_angle_to_x(double alpha_bar) {
    const double a = normalize_angle(alpha_bar);
    if (std::abs(a - 0.5 * M_PI) < 1e-12)
        throw std::domain_error("boundary_angle_to_x: alpha_bar = pi/2 is the point at infinity");
    return std::cos(a) / (1.0 - std::sin(a));
}

double x_to_boundary_angle(double x_bar) {
    return std::atan2(x_bar * x_bar - 1.0, 2.0 * x_bar);
}

}  // namespace hypk
