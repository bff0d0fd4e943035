#pragma once

#include <Eigen/Dense>

namespace hypk {

// Point of the upper half-space model of H^n: x in R^{n-1}, y > 0.
// The origin is O = (0, ..., 0, 1).
struct HalfSpacePoint {
    Eigen::VectorXd x;
    double y = 1.0;

    HalfSpacePoint();
    HalfSpacePoint(double x0, double y0);  // H^2 convenience
    HalfSpacePoint(Eigen::VectorXd x0, double y0);

    int dimension() const { return static_cast<int>(x.size()) + 1; }
    static HalfSpacePoint origin(int n);
};

// Geodesic polar coordinates about O: radius eta >= 0 and n-1 angles.
// For n = 2 there is a single signed angle alpha in (-pi, pi]; the chart is
// degenerate at eta = 0 where alpha is fixed to 0 by convention.
struct PolarPoint {
    double eta = 0.0;
    Eigen::VectorXd angles;

    PolarPoint();
    PolarPoint(double eta0, double alpha0);  // H^2 convenience
    double alpha() const { return angles(0); }
};

// Poincare disc coordinates, r in [0,1), theta in (-pi, pi].
struct DiskPoint {
    double r = 0.0;
    double theta = 0.0;
};

// Point on the unit 2-sphere: colatitude theta in [0,pi], longitude phi in [0,2pi).
struct SpherePoint {
    double theta = 0.0;
    double phi = 0.0;
};

// Reduce an angle to the principal range (-pi, pi].
double normalize_angle(double a);

// Hyperbolic distance, cosh eta = 1 + ||z'-z||^2 / (2 y y'). The acosh
// argument is clamped to >= 1 to absorb rounding. Throws on nonpositive y
// or mismatched dimensions.
double hyperbolic_distance(const HalfSpacePoint& a, const HalfSpacePoint& b);

// H^2 chart:  x = sinh(eta) cos(alpha) / (cosh(eta) - sinh(eta) sin(alpha)),
//             y = 1 / (cosh(eta) - sinh(eta) sin(alpha)).
HalfSpacePoint polar_to_halfspace_h2(const PolarPoint& p);

// Inverse chart via  sinh(eta) cos(alpha) = x/y,
// sinh(eta) sin(alpha) = (x^2+y^2-1)/(2y), cosh(eta) = (x^2+y^2+1)/(2y).
PolarPoint halfspace_to_polar_h2(const HalfSpacePoint& z);

// H^2 <-> D^2: r = tanh(eta/2), theta = alpha.
DiskPoint h2_to_disk(const PolarPoint& p);
PolarPoint disk_to_h2(const DiskPoint& q);

// Hyperbolic Carnot (cosh rule):
// cosh eta_hat = cosh eta cosh eta_bar - sinh eta sinh eta_bar cos psi.
double carnot_hyperbolic(double eta, double eta_bar, double psi);

// Angle opposite eta_hat from the cosh rule, clamped into [0,pi].
// Requires eta, eta_bar > 0.
double angle_from_carnot(double eta, double eta_bar, double eta_hat);

// Spherical Carnot (cos rule):
// cos theta_hat = cos theta cos theta_bar + sin theta sin theta_bar cos dphi.
double carnot_spherical(double theta, double theta_bar, double dphi);

// Boundary chart of H^2: x_bar = cos(alpha_bar) / (1 - sin(alpha_bar)).
// alpha_bar = pi/2 corresponds to the boundary point at infinity and throws.
double boundary_angle_to_x(double alpha_bar);

// Inverse boundary chart: cos(alpha_bar) = 2 x_bar / (1 + x_bar^2),
// sin(alpha_bar) = (x_bar^2 - 1) / (1 + x_bar^2), the exact inverse of the
// forward map (x_bar^2 (1 - sin) = 1 + sin forces this sign).
double x_to_boundary_angle(double x_bar);

}  // namespace hypk
