#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "hypk/random.hpp"
#include "hypk/statistics.hpp"

using namespace hypk;

namespace {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

}  // namespace

TEST_CASE("ziggurat normal moments and tails") {
    NormalStream g(path_stream_seed(20240601, 0));
    const long n = 2000000;
    double s1 = 0, s2 = 0, s3 = 0, s4 = 0;
    long beyond2 = 0, beyond3 = 0;
    for (long i = 0; i < n; ++i) {
        const double z = g.next();
        s1 += z;
        s2 += z * z;
        s3 += z * z * z;
        s4 += z * z * z * z;
        if (std::abs(z) > 2.0) ++beyond2;
        if (std::abs(z) > 3.0) ++beyond3;
    }
    const double mean = s1 / n;
    const double var = s2 / n - mean * mean;
    const double skew = s3 / n;
    const double kurt = s4 / n;
    CHECK(std::abs(mean) < 5.0 / std::sqrt(static_cast<double>(n)));
    CHECK(std::abs(var - 1.0) < 5.0 * std::sqrt(2.0 / n));
    CHECK(std::abs(skew) < 5.0 * std::sqrt(15.0 / n));  // Var[Z^3] = 15
    CHECK(std::abs(kurt - 3.0) < 5.0 * std::sqrt(96.0 / n));  // Var[Z^4] = 96

    const double p2 = 2.0 * normal_cdf(-2.0);
    const double p3 = 2.0 * normal_cdf(-3.0);
    CHECK(std::abs(beyond2 / static_cast<double>(n) - p2) <
          5.0 * std::sqrt(p2 * (1 - p2) / n));
    CHECK(std::abs(beyond3 / static_cast<double>(n) - p3) <
          5.0 * std::sqrt(p3 * (1 - p3) / n));
}

TEST_CASE("ziggurat passes KS against the normal CDF") {
    NormalStream g(path_stream_seed(77, 3));
    std::vector<double> z(400000);
    for (auto& v : z) v = g.next();
    std::sort(z.begin(), z.end());
    CHECK(ks_test(z, normal_cdf, 0.01).passed);
}

TEST_CASE("ziggurat and polar method sample the same law") {
    NormalStream zig(path_stream_seed(5, 0));
    PolarNormalStream pol(path_stream_seed(6, 1));
    std::vector<double> a(200000), b(200000);
    for (auto& v : a) v = zig.next();
    for (auto& v : b) v = pol.next();
    CHECK(ks_test_two_sample(a, b, 0.01).passed);
}

TEST_CASE("streams are reproducible and decorrelated") {
    NormalStream a1(path_stream_seed(42, 7));
    NormalStream a2(path_stream_seed(42, 7));
    for (int i = 0; i < 1000; ++i) CHECK(a1.next() == a2.next());

    // neighboring path streams: sample correlation consistent with zero
    NormalStream b1(path_stream_seed(42, 8));
    NormalStream b2(path_stream_seed(42, 9));
    const long n = 200000;
    double cross = 0;
    for (long i = 0; i < n; ++i) cross += b1.next() * b2.next();
    CHECK(std::abs(cross / n) < 5.0 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("uniform01 range") {
    Xoshiro256pp e(31415);
    for (int i = 0; i < 100000; ++i) {
        const double u = e.uniform01();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}
