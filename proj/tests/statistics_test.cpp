#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "hypk/kernels.hpp"
#include "hypk/random.hpp"
#include "hypk/statistics.hpp"

using namespace hypk;

namespace {

// Tabulated CDF of an analytic density by cumulative quadrature, invertible
// by bisection; the sampling route for calibration tests.
class TabulatedCdf {
  public:
    TabulatedCdf(const std::function<double(double)>& density, double lo, double hi, int cells)
        : lo_(lo), hi_(hi) {
        grid_.resize(cells + 1);
        cum_.resize(cells + 1);
        cum_[0] = 0.0;
        for (int i = 0; i <= cells; ++i) grid_[i] = lo + (hi - lo) * i / cells;
        for (int i = 1; i <= cells; ++i)
            cum_[i] = cum_[i - 1] + integrate(density, grid_[i - 1], grid_[i], 1e-12).value;
        for (auto& c : cum_) c /= cum_.back();
    }

    double operator()(double x) const {
        if (x <= lo_) return 0.0;
        if (x >= hi_) return 1.0;
        const auto it = std::upper_bound(grid_.begin(), grid_.end(), x);
        const std::size_t i = static_cast<std::size_t>(it - grid_.begin()) - 1;
        const double w = (x - grid_[i]) / (grid_[i + 1] - grid_[i]);
        return cum_[i] + w * (cum_[i + 1] - cum_[i]);
    }

    double invert(double u) const {
        const auto it = std::lower_bound(cum_.begin(), cum_.end(), u);
        if (it == cum_.begin()) return lo_;
        if (it == cum_.end()) return hi_;
        const std::size_t i = static_cast<std::size_t>(it - cum_.begin());
        const double w = (u - cum_[i - 1]) / (cum_[i] - cum_[i - 1]);
        return grid_[i - 1] + w * (grid_[i] - grid_[i - 1]);
    }

  private:
    double lo_, hi_;
    std::vector<double> grid_, cum_;
};

}  // namespace

TEST_CASE("integrate closed forms") {
    // int_0^{2pi} dtheta/(a + b cos) = 2 pi / sqrt(a^2 - b^2) at a=2, b=1
    CHECK(integrate([](double t) { return 1.0 / (2.0 + std::cos(t)); }, 0.0, 2.0 * M_PI).value ==
          doctest::Approx(2.0 * M_PI / std::sqrt(3.0)).epsilon(1e-12));
    CHECK(integrate([](double t) { return std::sin(t); }, 0.0, M_PI).value ==
          doctest::Approx(2.0).epsilon(1e-13));
    CHECK(integrate([](double t) { return std::pow(std::sin(t), 3.0); }, 0.0, M_PI).value ==
          doctest::Approx(4.0 / 3.0).epsilon(1e-13));

    Xoshiro256pp rng(51);
    for (int i = 0; i < 20; ++i) {
        const double a = 1.2 + 3.8 * rng.uniform01();
        const double b = (2.0 * rng.uniform01() - 1.0) * (a - 0.2);
        const double closed = 2.0 * M_PI / std::sqrt(a * a - b * b);
        CHECK(integrate([&](double t) { return 1.0 / (a + b * std::cos(t)); }, 0.0, 2.0 * M_PI)
                  .value == doctest::Approx(closed).epsilon(1e-10));
    }
    CHECK_THROWS_AS(integrate([](double t) { return std::sqrt(std::abs(t)); }, 0.0, 1.0, 1e-16, 4),
                    ConvergenceError);
}

TEST_CASE("quantile helpers") {
    CHECK(normal_quantile(0.975) == doctest::Approx(1.9599639845).epsilon(1e-7));
    CHECK(normal_quantile(0.99) == doctest::Approx(2.3263478740).epsilon(1e-7));
    CHECK(normal_quantile(0.5) == doctest::Approx(0.0).epsilon(1e-9));
    // Wilson-Hilferty against the tabulated chi-square quantile
    CHECK(chi_square_quantile(0.99, 29) == doctest::Approx(49.588).epsilon(2e-3));
    CHECK(chi_square_quantile(0.99, 35) == doctest::Approx(57.342).epsilon(2e-3));
}

TEST_CASE("cumulative cdf of a kernel is monotone and ends at one") {
    TabulatedCdf cdf([](double a) { return poisson_h2(0.8, a, 1.5); }, -M_PI, M_PI, 400);
    double prev = -1.0;
    for (int i = 0; i <= 200; ++i) {
        const double x = -M_PI + 2.0 * M_PI * i / 200.0;
        const double v = cdf(x);
        CHECK(v >= prev);
        prev = v;
    }
    CHECK(cdf(M_PI) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("ks_test calibration and power") {
    // inverse-transform samples from the cdf itself pass at alpha = 0.01
    TabulatedCdf cdf([](double a) { return poisson_h2_boundary(0.8, a); }, -M_PI, M_PI, 800);
    Xoshiro256pp rng(52);
    int passes = 0;
    const int trials = 120;
    for (int t = 0; t < trials; ++t) {
        std::vector<double> samples(1500);
        for (auto& s : samples) s = cdf.invert(rng.uniform01());
        std::sort(samples.begin(), samples.end());
        passes += ks_test(samples, [&](double x) { return cdf(x); }, 0.01).passed ? 1 : 0;
    }
    CHECK(passes >= static_cast<int>(0.95 * trials));

    // uniform samples against a non-uniform law fail decisively
    std::vector<double> uniform(5000);
    for (auto& s : uniform) s = 2.0 * M_PI * rng.uniform01() - M_PI;
    std::sort(uniform.begin(), uniform.end());
    TabulatedCdf peaked([](double a) { return poisson_h2(0.8, a, 1.5); }, -M_PI, M_PI, 800);
    CHECK_FALSE(ks_test(uniform, [&](double x) { return peaked(x); }, 0.01).passed);

    // threshold at N = 1e4: c(0.01)/sqrt(N)
    std::vector<double> big(10000);
    for (std::size_t i = 0; i < big.size(); ++i) big[i] = (i + 0.5) / big.size();
    const auto rep = ks_test(big, [](double x) { return std::clamp(x, 0.0, 1.0); }, 0.01);
    CHECK(rep.threshold == doctest::Approx(0.01628).epsilon(1e-10));

    std::vector<double> unsorted = {0.5, 0.1, 0.9};
    CHECK_THROWS_AS(ks_test(unsorted, [](double x) { return x; }, 0.01), std::exception);
    std::vector<double> too_few(50, 0.5);
    CHECK_THROWS_AS(ks_test(too_few, [](double x) { return x; }, 0.01), std::domain_error);
}

TEST_CASE("chi_square_test rejects an empty histogram") {
    EmpiricalDistribution empty;
    empty.bin_edges = {0.0, 1.0};
    empty.counts = {0};
    empty.total = 0;
    CHECK_THROWS_AS(chi_square_test(empty, [](double) { return 1.0; }, 0.01), std::domain_error);
}

TEST_CASE("chi_square_test calibration, power and merging") {
    TabulatedCdf cdf([](double a) { return poisson_sphere(0.6, a, 1.2); }, -M_PI, M_PI, 800);
    Xoshiro256pp rng(53);
    std::vector<double> samples(20000);
    for (auto& s : samples) s = cdf.invert(rng.uniform01());
    const auto hist = make_histogram(samples, -M_PI, M_PI, 40);
    const auto good = chi_square_test(
        hist, [](double a) { return poisson_sphere(0.6, a, 1.2); }, 0.01);
    CHECK(good.passed);
    CHECK(good.method == GofReport::Method::ChiSquare);

    // uniform histogram against the same density fails
    std::vector<double> uniform(20000);
    for (auto& s : uniform) s = 2.0 * M_PI * rng.uniform01() - M_PI;
    const auto bad_hist = make_histogram(uniform, -M_PI, M_PI, 40);
    CHECK_FALSE(chi_square_test(
                    bad_hist, [](double a) { return poisson_sphere(0.6, a, 1.2); }, 0.01)
                    .passed);

    // a concentrated density forces tail-bin merging: dof drops below bins-1
    TabulatedCdf tight([](double a) { return poisson_h2(1.3, a, 1.45); }, -M_PI, M_PI, 800);
    std::vector<double> tight_samples(4000);
    for (auto& s : tight_samples) s = tight.invert(rng.uniform01());
    const auto tight_hist = make_histogram(tight_samples, -M_PI, M_PI, 40);
    const auto merged = chi_square_test(
        tight_hist, [](double a) { return poisson_h2(1.3, a, 1.45); }, 0.01);
    CHECK(merged.degrees_of_freedom < 39);
    CHECK(merged.passed);
}

TEST_CASE("binomial_ci") {
    const auto [lo, hi] = binomial_ci(500, 1000, 3.0);
    CHECK(lo == doctest::Approx(0.5 - 0.04743416490252569).epsilon(1e-12));
    CHECK(hi == doctest::Approx(0.5 + 0.04743416490252569).epsilon(1e-12));

    const auto [zl, zh] = binomial_ci(0, 1000, 3.0);
    CHECK(zl == 0.0);
    CHECK(zh > 0.0);
    const auto [ol, oh] = binomial_ci(1000, 1000, 3.0);
    CHECK(ol < 1.0);
    CHECK(oh == 1.0);
    CHECK_THROWS_AS(binomial_ci(10, 999, 3.0), std::domain_error);
}
