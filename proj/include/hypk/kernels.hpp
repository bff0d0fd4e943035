#pragma once

#include <Eigen/Dense>

#include "hypk/special_functions.hpp"

namespace hypk {

// One kernel evaluation: probability density per unit angle, the number of
// series terms used, and a bound on the truncation error (zero for the
// closed forms).
struct KernelEvaluation {
    double density = 0.0;
    int terms_used = 0;
    double truncation_error_bound = 0.0;
};

// Hitting density on the hyperbolic circle of radius eta_bar in H^2 for the
// motion started at radius eta, as a density in the exit angle:
//
//   (1/2pi) (cosh eta_bar - cosh eta)
//           / (cosh eta cosh eta_bar - 1 - sinh eta sinh eta_bar cos dalpha).
//
// For eta_bar > 300 the evaluation switches to the equivalent bounded
// tanh(eta/2)-ratio representation (cosh would overflow near 710).
// Requires 0 <= eta < eta_bar.
double poisson_h2(double eta, double dalpha, double eta_bar);

// Fourier partial sum of the same law:
//   1/2pi + (1/pi) sum_{m=1}^{M} cos(m dalpha) q^m,  q = tanh(eta/2)/tanh(eta_bar/2).
// The geometric tail q^{M+1}/(pi (1-q)) is reported as the truncation bound.
KernelEvaluation poisson_h2_series(double eta, double dalpha, double eta_bar, int m_terms);

// Limit law on the boundary at infinity of H^2:
//   (1/2pi) / (cosh eta - sinh eta cos dalpha).
double poisson_h2_boundary(double eta, double dalpha);

// Density of the hitting abscissa on the x-axis for the motion started at
// (x,y): Cauchy with location x and scale y. In two dimensions the motion is
// a time change of Euclidean Brownian motion, which cannot move the hitting
// location; the y_bar = 0 reduction of poisson_h2_cartesian factorizes to
// the same law.
double cauchy_hitting_density(double x, double y, double x_bar);

// The H^2 circle kernel in cartesian coordinates of both points, still a
// density per unit exit angle (it equals poisson_h2 after the coordinate
// change):
//   (1/2pi) [ (xb^2+yb^2) y - (x^2+y^2) yb + y - yb ] / ((x-xb)^2 + (y-yb)^2).
// At yb = 0 this is (1/2pi) (1+xb^2) y / ((x-xb)^2 + y^2) per unit angle;
// the boundary chart Jacobian 2/(1+xb^2) turns it into the Cauchy density
// per unit abscissa.
double poisson_h2_cartesian(double x, double y, double x_bar, double y_bar);

// Marginal density of the exit angle psi in [0,pi] on the sphere of radius
// eta_bar in H^n, n >= 3. Gegenbauer-hypergeometric series; coefficients are
// precomputed once per (n, eta, eta_bar) so evaluation over a grid is cheap.
// Large eta_bar slows the hypergeometric series down (its argument
// approaches 1); the convergence failure is surfaced as ConvergenceError,
// callers with big radii should relax ctrl.tol.
class PoissonHnSeries {
  public:
    // finite outer radius, 0 <= eta < eta_bar
    PoissonHnSeries(int n, double eta, double eta_bar, SeriesControl ctrl = {});

    // eta_bar -> infinity limit: the hypergeometric denominator is replaced
    // by its Gamma closed form at argument 1.
    static PoissonHnSeries boundary_limit(int n, double eta, SeriesControl ctrl = {});

    KernelEvaluation operator()(double psi) const;

    int dimension() const { return n_; }
    int terms() const { return static_cast<int>(coeff_.size()); }

  private:
    PoissonHnSeries() = default;
    void build(double eta, double eta_bar, bool infinite, SeriesControl ctrl);

    int n_ = 3;
    Eigen::ArrayXd coeff_;       // A_k, k = 0..K
    double tail_bound_ = 0.0;    // bound on sum_{k>K} |A_k| C_k(1)
    double angular_norm_ = 0.0;  // Omega_{n-1}/Omega_n
};

// Single-point wrappers around PoissonHnSeries.
KernelEvaluation poisson_hn(int n, double eta, double eta_bar, double psi,
                            SeriesControl ctrl = {});
KernelEvaluation poisson_hn_infinite(int n, double eta, double psi, SeriesControl ctrl = {});

// Euclidean Poisson kernel of the n-ball as a density of the exit angle,
// rho = starting radius / ball radius:
//   (Omega_{n-1}/Omega_n) (1-rho^2) / (1 - 2 rho cos psi + rho^2)^{n/2} sin^{n-2} psi.
double euclidean_poisson_nd(int n, double rho, double psi);

// Cauchy-type density on R^{n-1} (limit law on the boundary of H^n):
//   Gamma(n-1) / (pi^{(n-1)/2} Gamma((n-1)/2)) (y / (y^2 + |x|^2))^{n-1}.
double cauchy_type_hn(int n, const Eigen::VectorXd& x, double y);

// Poincare disc circle kernel, 0 <= r < r_bar < 1:
//   (1/2pi) (r_bar^2 - r^2) / (r_bar^2 + r^2 - 2 r r_bar cos dtheta).
double poisson_d2(double r, double dtheta, double r_bar);

// r_bar -> 1 limit of the disc kernel.
double poisson_d2_boundary(double r, double dtheta);

// Hitting density on the spherical circle of colatitude theta_bar for the
// spherical motion started at colatitude theta inside the cap around the
// north pole, 0 <= theta < theta_bar < pi:
//   (1/2pi) (cos theta - cos theta_bar)
//           / (1 - cos theta cos theta_bar - sin theta sin theta_bar cos dphi).
double poisson_sphere(double theta, double dphi, double theta_bar);

}  // namespace hypk
