#pragma once

namespace hypk {

// Annulus radii (inner < outer) in whichever coordinate the geometry uses.
struct AnnulusSpec {
    double inner = 0.0;
    double outer = 0.0;
};

// P{ T_{eta1} < T_{eta2} } for hyperbolic Brownian motion in H^2 started at
// radius eta inside the annulus eta1 < eta < eta2:
//   (log tanh(eta2/2) - log tanh(eta/2)) / (log tanh(eta2/2) - log tanh(eta1/2)).
double exit_prob_h2(double eta, double eta1, double eta2);

// eta2 -> infinity limit: P{ T_{eta1} < infinity } = log tanh(eta/2) / log tanh(eta1/2).
// Strictly below one: planar hyperbolic Brownian motion is transient.
double hit_prob_h2(double eta, double eta1);

// Coefficients c(n,0) = 1 and
//   c(n,k) = (n-3)(n-5)...(n-2k-1) / ((n-2)(n-4)...(n-2k-2)),  k >= 1,
// entering the radial solutions in H^n. k ranges to (n-3)/2 for odd n and
// (n-4)/2 for even n.
double c_coeff(int n, int k);

// Radial harmonic potential v_n on H^n (antiderivative of sinh^{1-n}),
// determined up to an affine map:
//   n = 2:        log tanh(eta/2)
//   n = 3,5,...:  sum_k (-1)^{k-1} w(n,k) cosh(eta)/sinh^{n-2k-2}(eta)
//   n = 4,6,...:  same sum plus (-1)^{(n-2)/2} ((n-3)!!/(n-2)!!) log tanh(eta/2)
// with w(n,0) = 1/(n-2) and w(n,k) = c(n,k) for k >= 1. Exposed for the
// finite-difference harmonicity checks. n is capped at 30.
double radial_potential_hn(int n, double eta);

// Exit probabilities from the annulus in H^n as ratios of radial potential
// differences; n = 2 routes to the dedicated planar formula.
double exit_prob_hn(int n, double eta, double eta1, double eta2);

// eta2 -> infinity limit in H^n (for odd n the potential has a finite limit
// at infinity; for even n and n = 2 the limit is zero).
double hit_prob_hn(int n, double eta, double eta1);

// Poincare disc versions, exact images of the H^2 formulas under r = tanh(eta/2):
//   exit: (log r2 - log r) / (log r2 - log r1),  hit: log r / log r1.
double exit_prob_d2(double r, double r1, double r2);
double hit_prob_d2(double r, double r1);

// P{ T_{theta1} < T_{theta2} } for Brownian motion on S^2 started at
// colatitude theta inside the annulus theta2 < theta < theta1, as a ratio of
// log tan(theta/2) differences.
double exit_prob_sphere(double theta, double theta1, double theta2);

// Euclidean comparison values: log ratio for n = 2, power-law ratio for n >= 3.
double exit_prob_euclidean(int n, double eta, double eta1, double eta2);

}  // namespace hypk
