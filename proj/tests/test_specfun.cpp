#include "eislab/specfun.hpp"

#include <doctest.h>

#include <cmath>

using namespace eislab;
using namespace eislab::specfun;

static double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

TEST_CASE("gamma at classical points") {
    CHECK(rel(complex_gamma(1.0), 1.0) < 1e-13);
    CHECK(rel(complex_gamma(0.5), std::sqrt(PI)) < 1e-13);
    CHECK(rel(complex_gamma(6.0), 120.0) < 1e-13);
    // |Gamma(i)|^2 = pi / sinh(pi), from the reflection formula
    double want = std::sqrt(PI / std::sinh(PI));
    CHECK(std::abs(std::abs(complex_gamma(cplx(0, 1))) - want) < 1e-13);
}

TEST_CASE("gamma poles and conjugation") {
    CHECK_THROWS_AS(complex_gamma(cplx(0.0, 0.0)), PoleError);
    CHECK_THROWS_AS(complex_gamma(cplx(-3.0, 0.0)), PoleError);
    for (cplx s : {cplx(2.3, 4.5), cplx(0.5, 30.0), cplx(-1.3, 2.2)}) {
        cplx a = complex_gamma(std::conj(s));
        cplx b = std::conj(complex_gamma(s));
        CHECK(rel(a, b) < 1e-12);
    }
}

TEST_CASE("gamma functional equation z Gamma(z) = Gamma(z+1)") {
    for (cplx s : {cplx(0.7, 1.0), cplx(3.2, -14.0), cplx(0.5, 120.0)}) {
        CHECK(rel(s * complex_gamma(s), complex_gamma(s + 1.0)) < 1e-12);
    }
}

TEST_CASE("zeta classical values") {
    CHECK(rel(zeta(2.0), PI * PI / 6.0) < 1e-12);
    CHECK(rel(zeta(4.0), std::pow(PI, 4) / 90.0) < 1e-12);
    CHECK(std::abs(zeta(cplx(0.0, 0.0)) - cplx(-0.5, 0.0)) < 1e-12);
    CHECK_THROWS_AS(zeta(cplx(1.0, 0.0)), PoleError);
    CHECK_THROWS_AS(zeta(cplx(-2.0, 0.0)), std::domain_error);
}

TEST_CASE("zeta self-consistency between truncation orders") {
    for (cplx s : {cplx(1.0, 2.0), cplx(0.5, 100.0), cplx(0.5, 700.0), cplx(2.0, 37.0)}) {
        cplx a = zeta(s);
        cplx b = zeta_highres(s, 300);
        CHECK(std::abs(a - b) / std::abs(b) < 1e-10);
    }
}

TEST_CASE("zeta conjugation symmetry") {
    for (cplx s : {cplx(0.5, 14.13), cplx(1.5, 3.0), cplx(3.0, 250.0)}) {
        CHECK(rel(zeta(std::conj(s)), std::conj(zeta(s))) < 1e-12);
    }
}

TEST_CASE("xi composition and functional equation") {
    CHECK(rel(xi(2.0), PI / 6.0) < 1e-12);
    cplx s(0.3, 4.0);
    CHECK(std::abs(xi(s) - xi(1.0 - s)) < 1e-9);
    CHECK(rel(xi(std::conj(s)), std::conj(xi(s))) < 1e-12);
    // |xi(1+2iT)| = |xi(1-2iT)|: forces |phi| = 1 downstream
    for (double T : {1.0, 7.3, 40.0}) {
        double a = std::abs(std::exp(log_xi(cplx(1.0, 2.0 * T))));
        double b = std::abs(std::exp(log_xi(cplx(1.0, -2.0 * T))));
        CHECK(std::abs(a - b) / b < 1e-12);
    }
    CHECK_THROWS_AS(xi(cplx(0.0, 0.0)), PoleError);
    CHECK_THROWS_AS(xi(cplx(1.0, 0.0)), PoleError);
}

// Power-series oracle for K_0.
static double k0_series(double x) {
    const double euler = 0.57721566490153286060651209008240243;
    double q = x * x / 4.0;
    double i0 = 1.0, sum = 0.0, term = 1.0, h = 0.0;
    for (int k = 1; k <= 60; ++k) {
        term *= q / (k * (double)k);
        i0 += term;
        h += 1.0 / k;
        sum += term * h;
    }
    return -(std::log(x / 2.0) + euler) * i0 + sum;
}

TEST_CASE("bessel t=0 against the K0 power series") {
    for (double u : {0.1, 0.5, 1.0, 3.0, 10.0}) {
        double got = bessel_k_scaled(0.0, u).value;
        CHECK(std::abs(got - k0_series(u)) < 1e-10);
    }
    CHECK(bessel_k_scaled(0.0, 1.0).value == doctest::Approx(0.42102443824070834).epsilon(1e-9));
}

TEST_CASE("bessel domain errors") {
    CHECK_THROWS_AS(bessel_k_scaled(-1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(bessel_k_scaled(600.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(bessel_k_scaled(1.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(bessel_k_scaled(1.0, -2.0), std::domain_error);
}

TEST_CASE("bessel deep decay regime") {
    for (double t : {0.0, 3.0, 17.0, 60.0}) {
        double u = 10.0 * t + 50.0;
        CHECK(std::abs(bessel_k_scaled(t, u).value) < 1e-8);
    }
}

TEST_CASE("bessel node-refinement stability") {
    for (double t : {0.0, 1.0, 25.0, 144.0, 512.0}) {
        for (double u : {0.05, 1.0, 0.7 * t + 0.1, t + 1.0, 1.3 * t + 2.0}) {
            double a = bessel_k_scaled(t, u).value;
            double b = bessel_k_scaled_refined(t, u, 3).value;
            CHECK(std::abs(a - b) <= 1e-11 * std::max(1.0, std::abs(b)));
        }
    }
}

TEST_CASE("bessel Mellin identity against the Gamma product") {
    // int_0^inf K_{it}(u) u du = Gamma(1 + it/2) Gamma(1 - it/2)
    //                          = |Gamma(1 + it/2)|^2, scaled by e^{pi t/2}
    for (double t : {5.0, 13.3}) {
        double hi = t + 30.0 * std::cbrt(t) + 80.0;
        double got = integrate_adaptive(
            [&](double u) { return bessel_k_scaled(t, u).value * u; }, 1e-8, hi, 1e-10);
        double want =
            std::exp(PI * t / 2.0 + 2.0 * log_gamma(cplx(1.0, t / 2.0)).real());
        CHECK(std::abs(got - want) / want < 1e-7);
    }
}

TEST_CASE("bessel three-regime envelope with one fitted constant per regime") {
    // same shape as the acceptance criterion, smoke level
    double t = 100.0, tc = std::cbrt(t);
    double c1 = 0, c2 = 0;
    for (int i = 0; i <= 20; ++i) {
        double u = 20.0 + (t - 3 * tc - 20.0) * i / 20.0;
        c1 = std::max(c1, std::abs(bessel_k_scaled(t, u).value) * std::pow(t, 0.25) *
                              std::pow(t - u, 0.25));
    }
    for (int i = 0; i <= 20; ++i) {
        double u = t - 3 * tc + 6 * tc * i / 20.0;
        c2 = std::max(c2, std::abs(bessel_k_scaled(t, u).value) * std::pow(t, 1.0 / 3.0));
    }
    CHECK(c1 < 3.0);
    CHECK(c2 < 3.0);
    CHECK(std::abs(bessel_k_scaled(t, t + 12 * tc).value) < 1e-6);
}

TEST_CASE("bessel_k_half closed forms") {
    double x = 2.5;
    double k12 = std::sqrt(PI / (2 * x)) * std::exp(-x);
    CHECK(bessel_k_half(1, x) == doctest::Approx(k12).epsilon(1e-14));
    CHECK(bessel_k_half(3, x) == doctest::Approx(k12 * (1 + 1 / x)).epsilon(1e-14));
    CHECK_THROWS_AS(bessel_k_half(7, x), std::domain_error);
}
