#include <doctest.h>

#include <cmath>

#include "hypk/geometry.hpp"
#include "hypk/random.hpp"

using namespace hypk;

TEST_CASE("hyperbolic distance basics") {
    const HalfSpacePoint o = HalfSpacePoint::origin(2);
    CHECK(hyperbolic_distance(o, o) == doctest::Approx(0.0).epsilon(1e-15));

    // (e^2+1)/(2e) = cosh 1 by direct evaluation
    CHECK(hyperbolic_distance(HalfSpacePoint(0.0, 1.0), HalfSpacePoint(0.0, std::exp(1.0))) ==
          doctest::Approx(1.0).epsilon(1e-14));

    Xoshiro256pp rng(99);
    for (int i = 0; i < 200; ++i) {
        const HalfSpacePoint a(4.0 * rng.uniform01() - 2.0, 0.1 + 3.0 * rng.uniform01());
        const HalfSpacePoint b(4.0 * rng.uniform01() - 2.0, 0.1 + 3.0 * rng.uniform01());
        CHECK(hyperbolic_distance(a, b) == doctest::Approx(hyperbolic_distance(b, a)).epsilon(1e-14));
    }
    CHECK_THROWS_AS(hyperbolic_distance(HalfSpacePoint(0.0, -1.0), o), std::domain_error);
}

TEST_CASE("triangle inequality on random triples") {
    Xoshiro256pp rng(7);
    for (int i = 0; i < 300; ++i) {
        const HalfSpacePoint a(4.0 * rng.uniform01() - 2.0, 0.2 + 2.0 * rng.uniform01());
        const HalfSpacePoint b(4.0 * rng.uniform01() - 2.0, 0.2 + 2.0 * rng.uniform01());
        const HalfSpacePoint c(4.0 * rng.uniform01() - 2.0, 0.2 + 2.0 * rng.uniform01());
        CHECK(hyperbolic_distance(a, c) <=
              hyperbolic_distance(a, b) + hyperbolic_distance(b, c) + 1e-12);
    }
}

TEST_CASE("polar chart of H^2") {
    const HalfSpacePoint at_origin = polar_to_halfspace_h2(PolarPoint(0.0, 1.3));
    CHECK(at_origin.x(0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(at_origin.y == doctest::Approx(1.0).epsilon(1e-15));

    // alpha = pi/2 points straight up: (0, e^eta)
    const HalfSpacePoint up = polar_to_halfspace_h2(PolarPoint(1.7, M_PI / 2.0));
    CHECK(up.x(0) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(up.y == doctest::Approx(std::exp(1.7)).epsilon(1e-14));

    const PolarPoint of_origin = halfspace_to_polar_h2(HalfSpacePoint(0.0, 1.0));
    CHECK(of_origin.eta == 0.0);
    CHECK(of_origin.alpha() == 0.0);

    // (1,1): cosh eta = 3/2, sinh cos = 1, sinh sin = 1/2
    const PolarPoint p11 = halfspace_to_polar_h2(HalfSpacePoint(1.0, 1.0));
    CHECK(std::cosh(p11.eta) == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(std::sinh(p11.eta) * std::cos(p11.alpha()) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(std::sinh(p11.eta) * std::sin(p11.alpha()) == doctest::Approx(0.5).epsilon(1e-13));
    const HalfSpacePoint back = polar_to_halfspace_h2(p11);
    CHECK(back.x(0) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(back.y == doctest::Approx(1.0).epsilon(1e-13));

    Xoshiro256pp rng(11);
    for (int i = 0; i < 300; ++i) {
        const PolarPoint p(3.0 * rng.uniform01() + 1e-3, 2.0 * M_PI * rng.uniform01() - M_PI);
        const PolarPoint round = halfspace_to_polar_h2(polar_to_halfspace_h2(p));
        CHECK(round.eta == doctest::Approx(p.eta).epsilon(1e-12));
        CHECK(normalize_angle(round.alpha() - p.alpha()) == doctest::Approx(0.0).epsilon(1e-12));
    }
}

TEST_CASE("inversion maps (eta, alpha) to (eta, -alpha)") {
    Xoshiro256pp rng(12);
    for (int i = 0; i < 200; ++i) {
        const double x = 3.0 * rng.uniform01() - 1.5;
        const double y = 0.2 + 2.5 * rng.uniform01();
        const double rho2 = x * x + y * y;
        const PolarPoint direct = halfspace_to_polar_h2(HalfSpacePoint(x, y));
        const PolarPoint inverted = halfspace_to_polar_h2(HalfSpacePoint(x / rho2, y / rho2));
        CHECK(inverted.eta == doctest::Approx(direct.eta).epsilon(1e-12));
        CHECK(normalize_angle(inverted.alpha() + direct.alpha()) ==
              doctest::Approx(0.0).epsilon(1e-11));
    }
}

TEST_CASE("disc map r = tanh(eta/2)") {
    CHECK(h2_to_disk(PolarPoint(0.0, 0.0)).r == 0.0);
    CHECK(h2_to_disk(PolarPoint(20.0, 0.0)).r > 1.0 - 1e-8);

    Xoshiro256pp rng(13);
    for (int i = 0; i < 200; ++i) {
        const PolarPoint p(4.0 * rng.uniform01(), 2.0 * M_PI * rng.uniform01() - M_PI);
        const PolarPoint round = disk_to_h2(h2_to_disk(p));
        CHECK(round.eta == doctest::Approx(p.eta).epsilon(1e-12));
        CHECK(normalize_angle(round.alpha() - p.alpha()) == doctest::Approx(0.0).epsilon(1e-12));
    }
    CHECK_THROWS_AS(disk_to_h2(DiskPoint{1.0, 0.0}), std::domain_error);
}

TEST_CASE("hyperbolic Carnot formula") {
    CHECK(carnot_hyperbolic(1.0, 2.5, 0.0) == doctest::Approx(1.5).epsilon(1e-13));
    CHECK(carnot_hyperbolic(1.0, 2.5, M_PI) == doctest::Approx(3.5).epsilon(1e-13));
    CHECK(std::cosh(carnot_hyperbolic(1.0, 2.0, M_PI / 2.0)) ==
          doctest::Approx(std::cosh(1.0) * std::cosh(2.0)).epsilon(1e-14));

    // distance formula vs Carnot through the polar chart
    Xoshiro256pp rng(14);
    for (int i = 0; i < 300; ++i) {
        const double eta = 2.5 * rng.uniform01() + 0.01;
        const double eta_bar = 2.5 * rng.uniform01() + 0.01;
        const double psi = M_PI * rng.uniform01();
        const HalfSpacePoint z = polar_to_halfspace_h2(PolarPoint(eta, psi));
        const HalfSpacePoint zb = polar_to_halfspace_h2(PolarPoint(eta_bar, 0.0));
        CHECK(hyperbolic_distance(z, zb) ==
              doctest::Approx(carnot_hyperbolic(eta, eta_bar, psi)).epsilon(1e-10));
    }
}

TEST_CASE("angle recovery from the Carnot formula") {
    CHECK(angle_from_carnot(1.0, 2.0, 3.0) == doctest::Approx(M_PI).epsilon(1e-12));
    CHECK(angle_from_carnot(1.0, 2.0, 1.0) == doctest::Approx(0.0).epsilon(1e-6));
    for (int i = 1; i < 30; ++i) {
        const double psi = M_PI * i / 30.0;
        CHECK(angle_from_carnot(0.7, 1.9, carnot_hyperbolic(0.7, 1.9, psi)) ==
              doctest::Approx(psi).epsilon(1e-10));
    }
    CHECK_THROWS_AS(angle_from_carnot(0.0, 1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(angle_from_carnot(1.0, 0.0, 1.0), std::domain_error);
}

TEST_CASE("spherical Carnot formula") {
    CHECK(carnot_spherical(1.0, 0.4, 0.0) == doctest::Approx(0.6).epsilon(1e-13));
    CHECK(carnot_spherical(1.0, 0.0, 1.7) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(carnot_spherical(M_PI / 2.0, M_PI / 2.0, M_PI / 2.0) ==
          doctest::Approx(M_PI / 2.0).epsilon(1e-13));
}

TEST_CASE("boundary chart of H^2") {
    CHECK(boundary_angle_to_x(0.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(boundary_angle_to_x(-M_PI / 2.0) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK_THROWS_AS(boundary_angle_to_x(M_PI / 2.0), std::domain_error);

    for (int i = 0; i < 60; ++i) {
        const double a = -M_PI + 2.0 * M_PI * (i + 0.5) / 60.0;
        if (std::abs(a - M_PI / 2.0) < 0.05) continue;
        CHECK(normalize_angle(x_to_boundary_angle(boundary_angle_to_x(a)) - a) ==
              doctest::Approx(0.0).epsilon(1e-12));
    }

    // Jacobian d alpha / d x = 2/(1+x^2), checked by central differences
    for (double xb : {-2.0, -0.5, 0.3, 1.7}) {
        const double d = 1e-6;
        const double fd = (x_to_boundary_angle(xb + d) - x_to_boundary_angle(xb - d)) / (2.0 * d);
        CHECK(std::abs(fd) == doctest::Approx(2.0 / (1.0 + xb * xb)).epsilon(1e-7));
    }
}
