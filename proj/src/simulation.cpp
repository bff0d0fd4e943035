#include "hypk/simulation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>

#include "hypk/exit_probabilities.hpp"
#include "hypk/random.hpp"

namespace hypk {

namespace {

constexpr int kMaxSimDimension = 30;
constexpr int kMaxHalvings = 10;
constexpr double kTruncationWarnFraction = 1e-3;

// Raw half-space state for the hot loops; fixed capacity avoids per-step
// allocation.
struct HnState {
    std::array<double, kMaxSimDimension - 1> x{};
    double y = 1.0;
    int n = 2;

    double cosh_eta() const {
        double rho2 = y * y;
        for (int i = 0; i < n - 1; ++i) rho2 += x[i] * x[i];
        return (rho2 + 1.0) / (2.0 * y);
    }
};

// One EM step; returns false when Y stayed nonpositive through all retries.
bool step_hn(HnState& s, double h, NormalStream& g) {
    const double drift = 0.5 * (s.n - 2.0);
    for (int halving = 0; halving <= kMaxHalvings; ++halving) {
        const double sqh = std::sqrt(h);
        double z[kMaxSimDimension];
        for (int i = 0; i < s.n; ++i) z[i] = g.next();
        const double y_new = s.y * (1.0 - drift * h + sqh * z[s.n - 1]);
        if (y_new > 0.0) {
            const double scale = s.y * sqh;
            for (int i = 0; i < s.n - 1; ++i) s.x[i] += scale * z[i];
            s.y = y_new;
            return true;
        }
        h *= 0.5;
    }
    return false;
}

double distance_between(const HnState& a, const HnState& b) {
    double sq = (a.y - b.y) * (a.y - b.y);
    for (int i = 0; i < a.n - 1; ++i) sq += (a.x[i] - b.x[i]) * (a.x[i] - b.x[i]);
    const double w = 1.0 + sq / (2.0 * a.y * b.y);
    return std::acosh(w < 1.0 ? 1.0 : w);
}

HnState start_state(int n, const PolarPoint& start) {
    HnState s;
    s.n = n;
    if (n == 2) {
        const HalfSpacePoint p = polar_to_halfspace_h2(start);
        s.x[0] = p.x(0);
        s.y = p.y;
    } else {
        // on the polar axis at hyperbolic distance eta from O
        s.y = std::exp(start.eta);
    }
    return s;
}

// Runs one job per path index on up to worker_count() threads. Each job owns
// a stream derived from (seed, index); Body writes results keyed by index,
// so scheduling cannot change any output.
template <typename Body>
void run_paths(long num_paths, std::uint64_t seed, Body&& body) {
    const unsigned workers =
        std::max(1u, std::min<unsigned>(worker_count(),
                                        static_cast<unsigned>(std::max<long>(1, num_paths / 256))));
    if (workers == 1) {
        for (long i = 0; i < num_paths; ++i) {
            NormalStream stream(path_stream_seed(seed, static_cast<std::uint64_t>(i)));
            body(i, stream);
        }
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const long chunk = (num_paths + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const long lo = w * chunk;
        const long hi = std::min(num_paths, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, seed, &body] {
            for (long i = lo; i < hi; ++i) {
                NormalStream stream(path_stream_seed(seed, static_cast<std::uint64_t>(i)));
                body(i, stream);
            }
        });
    }
    for (auto& t : pool) t.join();
}

FractionEstimate summarize_fraction(const std::vector<char>& success,
                                    const std::vector<char>& truncated) {
    FractionEstimate est;
    est.total = static_cast<long>(success.size());
    for (char s : success) est.successes += s;
    for (char t : truncated) est.truncated += t;
    est.fraction = static_cast<double>(est.successes) / static_cast<double>(est.total);
    est.std_error = std::sqrt(est.fraction * (1.0 - est.fraction) / static_cast<double>(est.total));
    est.warning = est.truncated > kTruncationWarnFraction * static_cast<double>(est.total);
    return est;
}

}  // namespace

void SimConfig::validate() const {
    if (dimension < 2 || dimension > kMaxSimDimension)
        throw std::domain_error("SimConfig: dimension out of range [2, 30]");
    if (!(step > 0.0) || step > 1e-2)
        throw std::domain_error("SimConfig: requires 0 < step <= 1e-2");
    if (num_paths < 1) throw std::domain_error("SimConfig: requires num_paths >= 1");
    if (max_steps < 1) throw std::domain_error("SimConfig: requires max_steps >= 1");
    if (!(escape_cap > 0.0)) throw std::domain_error("SimConfig: requires escape_cap > 0");
}

EmpiricalDistribution make_histogram(const std::vector<double>& samples, double lo, double hi,
                                     int bins) {
    if (bins < 1 || !(hi > lo)) throw std::domain_error("make_histogram: bad bin spec");
    EmpiricalDistribution dist;
    dist.bin_edges.resize(bins + 1);
    for (int i = 0; i <= bins; ++i)
        dist.bin_edges[i] = lo + (hi - lo) * static_cast<double>(i) / bins;
    dist.counts.assign(bins, 0);
    for (double s : samples) {
        if (s < lo || s > hi) continue;
        int idx = static_cast<int>((s - lo) / (hi - lo) * bins);
        if (idx == bins) idx = bins - 1;  // right edge inclusive
        ++dist.counts[idx];
        ++dist.total;
    }
    return dist;
}

HalfSpacePoint hbm_step(const HalfSpacePoint& point, int n, double h,
                        const Eigen::VectorXd& gaussians) {
    if (n < 2 || n > kMaxSimDimension) throw std::domain_error("hbm_step: bad dimension");
    if (point.x.size() != n - 1 || gaussians.size() != n)
        throw std::domain_error("hbm_step: size mismatch");
    if (!(point.y > 0.0) || !(h > 0.0)) throw std::domain_error("hbm_step: requires y > 0, h > 0");
    const double sqh = std::sqrt(h);
    HalfSpacePoint out = point;
    out.x += point.y * sqh * gaussians.head(n - 1);
    out.y = point.y * (1.0 - 0.5 * (n - 2.0) * h + sqh * gaussians(n - 1));
    return out;
}

SpherePoint sbm_step(const SpherePoint& point, double h, double g_theta, double g_phi) {
    if (!(point.theta > 0.0) || !(point.theta < M_PI))
        throw std::domain_error("sbm_step: requires theta in (0, pi)");
    const double sqh = std::sqrt(h);
    double theta = point.theta + 0.5 * h / std::tan(point.theta) + sqh * g_theta;
    double phi = point.phi + sqh * g_phi / std::sin(point.theta);
    // reflect across the poles; the antipodal longitude jump keeps the chart consistent
    while (theta < 0.0 || theta > M_PI) {
        if (theta < 0.0) theta = -theta;
        if (theta > M_PI) theta = 2.0 * M_PI - theta;
        phi += M_PI;
    }
    phi = std::fmod(phi, 2.0 * M_PI);
    if (phi < 0.0) phi += 2.0 * M_PI;
    return SpherePoint{theta, phi};
}

std::vector<ExitSample> first_hit_sphere(const SimConfig& cfg, const PolarPoint& start,
                                         double eta_bar) {
    cfg.validate();
    if (!(start.eta >= 0.0) || !(start.eta < eta_bar))
        throw std::domain_error("first_hit_sphere: requires start.eta < eta_bar");
    const int n = cfg.dimension;
    const double cosh_target = std::cosh(eta_bar);
    const HnState init = start_state(n, start);
    const double alpha0 = (n == 2) ? start.alpha() : 0.0;

    std::vector<ExitSample> samples(cfg.num_paths);
    run_paths(cfg.num_paths, cfg.seed, [&](long i, NormalStream& g) {
        HnState s = init;
        ExitSample out;
        for (long step = 1; step <= cfg.max_steps; ++step) {
            if (!step_hn(s, cfg.step, g)) break;
            const double cq = s.cosh_eta();
            if (cq >= cosh_target) {
                const double eta_exit = std::acosh(cq);
                out.steps_taken = step;
                out.overshoot = eta_exit - eta_bar;
                if (n == 2) {
                    const double rho2 = s.x[0] * s.x[0] + s.y * s.y;
                    const double alpha_exit =
                        std::atan2((rho2 - 1.0) / (2.0 * s.y), s.x[0] / s.y);
                    const double signed_angle = normalize_angle(alpha_exit - alpha0);
                    out.signed_angle = signed_angle;
                    out.psi = std::abs(signed_angle);
                } else if (start.eta > 0.0) {
                    out.psi = angle_from_carnot(start.eta, eta_exit, distance_between(init, s));
                } else {
                    // start at the center: measure the exit direction against
                    // the polar axis through a probe point on it
                    HnState probe;
                    probe.n = n;
                    probe.y = std::exp(1.0);
                    out.psi = angle_from_carnot(1.0, eta_exit, distance_between(probe, s));
                }
                samples[i] = out;
                return;
            }
        }
        out.truncated = true;
        out.steps_taken = cfg.max_steps;
        samples[i] = out;
    });
    return samples;
}

FractionEstimate first_exit_annulus(const SimConfig& cfg, double eta, double eta1, double eta2) {
    cfg.validate();
    if (!(eta1 > 0.0) || !(eta1 < eta) || !(eta < eta2))
        throw std::domain_error("first_exit_annulus: requires 0 < eta1 < eta < eta2");
    const int n = cfg.dimension;
    const double cosh_inner = std::cosh(eta1);
    const double cosh_outer = std::cosh(eta2);
    const HnState init = start_state(n, PolarPoint(eta, 0.0));

    std::vector<char> success(cfg.num_paths, 0);
    std::vector<char> truncated(cfg.num_paths, 0);
    run_paths(cfg.num_paths, cfg.seed, [&](long i, NormalStream& g) {
        HnState s = init;
        for (long step = 1; step <= cfg.max_steps; ++step) {
            if (!step_hn(s, cfg.step, g)) {
                truncated[i] = 1;
                return;
            }
            const double cq = s.cosh_eta();
            if (cq <= cosh_inner) {
                success[i] = 1;
                return;
            }
            if (cq >= cosh_outer) return;
        }
        truncated[i] = 1;
    });
    return summarize_fraction(success, truncated);
}

FractionEstimate escape_estimate(const SimConfig& cfg, double eta, double eta1) {
    if (!(eta < cfg.escape_cap))
        throw std::domain_error("escape_estimate: requires eta < escape_cap");
    FractionEstimate est = first_exit_annulus(cfg, eta, eta1, cfg.escape_cap);
    est.bias_bound = std::abs(hit_prob_hn(cfg.dimension, eta, eta1) -
                              exit_prob_hn(cfg.dimension, eta, eta1, cfg.escape_cap));
    return est;
}

std::vector<ExitSample> first_hit_spherical_circle(const SimConfig& cfg, const SpherePoint& start,
                                                   double theta_bar) {
    cfg.validate();
    if (!(start.theta > 0.0) || !(start.theta < theta_bar) || !(theta_bar < M_PI))
        throw std::domain_error(
            "first_hit_spherical_circle: requires 0 < start.theta < theta_bar < pi");
    std::vector<ExitSample> samples(cfg.num_paths);
    run_paths(cfg.num_paths, cfg.seed, [&](long i, NormalStream& g) {
        double theta = start.theta;
        double phi = start.phi;
        const double sqh = std::sqrt(cfg.step);
        ExitSample out;
        for (long step = 1; step <= cfg.max_steps; ++step) {
            const double z1 = g.next();
            const double z2 = g.next();
            double theta_new = theta + 0.5 * cfg.step / std::tan(theta) + sqh * z1;
            phi += sqh * z2 / std::sin(theta);
            if (!std::isfinite(theta_new)) break;  // pole-drift blowup, abandon path
            while (theta_new < 0.0 || theta_new > M_PI) {
                if (theta_new < 0.0) theta_new = -theta_new;
                if (theta_new > M_PI) theta_new = 2.0 * M_PI - theta_new;
                phi += M_PI;
            }
            theta = theta_new;
            if (theta >= theta_bar) {
                const double dphi = normalize_angle(phi - start.phi);
                out.signed_angle = dphi;
                out.psi = std::abs(dphi);
                out.steps_taken = step;
                out.overshoot = theta - theta_bar;
                samples[i] = out;
                return;
            }
        }
        out.truncated = true;
        out.steps_taken = cfg.max_steps;
        samples[i] = out;
    });
    return samples;
}

FractionEstimate spherical_exit_annulus(const SimConfig& cfg, double theta, double theta1,
                                        double theta2) {
    cfg.validate();
    if (!(theta2 > 0.0) || !(theta2 < theta) || !(theta < theta1) || !(theta1 < M_PI))
        throw std::domain_error(
            "spherical_exit_annulus: requires 0 < theta2 < theta < theta1 < pi");
    std::vector<char> success(cfg.num_paths, 0);
    std::vector<char> truncated(cfg.num_paths, 0);
    run_paths(cfg.num_paths, cfg.seed, [&](long i, NormalStream& g) {
        double th = theta;
        const double sqh = std::sqrt(cfg.step);
        for (long step = 1; step <= cfg.max_steps; ++step) {
            double th_new = th + 0.5 * cfg.step / std::tan(th) + sqh * g.next();
            if (!std::isfinite(th_new)) break;
            while (th_new < 0.0 || th_new > M_PI) {
                if (th_new < 0.0) th_new = -th_new;
                if (th_new > M_PI) th_new = 2.0 * M_PI - th_new;
            }
            th = th_new;
            if (th >= theta1) {
                success[i] = 1;
                return;
            }
            if (th <= theta2) return;
        }
        truncated[i] = 1;
    });
    return summarize_fraction(success, truncated);
}

unsigned worker_count() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("HYPK_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1 && cap < static_cast<long>(hw)) return static_cast<unsigned>(cap);
    }
    return hw;
}

}  // namespace hypk
