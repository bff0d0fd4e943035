#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "hypk/geometry.hpp"

namespace hypk {

// Monte Carlo run parameters. Per-path randomness is derived from (seed,
// path index) by a splittable construction, so results are bit-identical for
// a fixed config no matter how paths are scheduled across threads.
struct SimConfig {
    int dimension = 2;
    double step = 1e-4;
    long num_paths = 10000;
    std::uint64_t seed = 1;
    long max_steps = 50000000;
    double escape_cap = 10.0;

    void validate() const;  // throws std::domain_error on a bad field
};

// One first-passage record. psi is the angle between the start and exit
// directions as seen from the center; the signed version exists for n = 2.
// overshoot is the radial excess over the target at the detection step.
struct ExitSample {
    double psi = 0.0;
    std::optional<double> signed_angle;
    long steps_taken = 0;
    double overshoot = 0.0;
    bool truncated = false;
};

// Binned samples with normalization metadata.
struct EmpiricalDistribution {
    std::vector<double> bin_edges;
    std::vector<long> counts;
    long total = 0;
};

EmpiricalDistribution make_histogram(const std::vector<double>& samples, double lo, double hi,
                                     int bins);

// Success-fraction estimate with its binomial standard error. bias_bound is
// nonzero only for escape estimates, where stopping at escape_cap instead of
// infinity shifts the target probability by the reported analytic amount.
// warning is set when more than 0.1% of the paths were truncated.
struct FractionEstimate {
    double fraction = 0.0;
    double std_error = 0.0;
    long successes = 0;
    long total = 0;
    long truncated = 0;
    bool warning = false;
    double bias_bound = 0.0;
};

// One Euler-Maruyama step of hyperbolic Brownian motion in half-space
// coordinates: X_i' = X_i + Y sqrt(h) Z_i, Y' = Y (1 - (n-2)/2 h + sqrt(h) Z_n).
// gaussians must hold n entries. A step with Y' <= 0 is invalid; drivers
// retry it with h/2 (up to 10 halvings) before marking the path truncated.
HalfSpacePoint hbm_step(const HalfSpacePoint& point, int n, double h,
                        const Eigen::VectorXd& gaussians);

// One Euler-Maruyama step of Brownian motion on S^2:
// theta' = theta + (h/2) cot(theta) + sqrt(h) Z_1, reflected into (0,pi)
// with phi <- phi + pi on reflection; phi' = phi + sqrt(h) Z_2 / sin(theta).
SpherePoint sbm_step(const SpherePoint& point, double h, double g_theta, double g_phi);

// First hitting of the hyperbolic sphere of radius eta_bar from a start at
// radius start.eta (polar angle start.alpha() for n = 2; for n >= 3 the
// start sits on the polar axis, which loses no generality by rotational
// invariance). Detection takes the first discrete point at or beyond the
// boundary; the exit angle is exact for that recorded point.
std::vector<ExitSample> first_hit_sphere(const SimConfig& cfg, const PolarPoint& start,
                                         double eta_bar);

// Fraction of paths hitting the inner sphere of the annulus before the
// outer one, started at radius eta, eta1 < eta < eta2.
FractionEstimate first_exit_annulus(const SimConfig& cfg, double eta, double eta1, double eta2);

// Fraction hitting eta1 before cfg.escape_cap, with the analytic bias bound
// |hit_prob - exit_prob(escape_cap)| attached.
FractionEstimate escape_estimate(const SimConfig& cfg, double eta, double eta1);

// Spherical analogues (motion on S^2; cfg.dimension is ignored).
std::vector<ExitSample> first_hit_spherical_circle(const SimConfig& cfg, const SpherePoint& start,
                                                   double theta_bar);
FractionEstimate spherical_exit_annulus(const SimConfig& cfg, double theta, double theta1,
                                        double theta2);

// Worker threads used by the drivers: min(HYPK_THREADS, hardware threads).
unsigned worker_count();

}  // namespace hypk
