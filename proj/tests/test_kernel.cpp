#include "eislab/kernel.hpp"

#include <doctest.h>

#include <cmath>

using namespace eislab;
using namespace eislab::kernel;

TEST_CASE("selberg_g reproduces the Gaussian pair in closed form") {
    auto h = [](double r) { return std::exp(-r * r); };
    GTable g = selberg_g(h, 7.0, 14.0, 2001);
    for (double xi : {0.0, 0.3, 1.0, 2.5, 6.0}) {
        double want = std::exp(-xi * xi / 4.0) / (2.0 * std::sqrt(PI));
        CHECK(g.at(xi) == doctest::Approx(want).epsilon(1e-9));
        CHECK(g.at(-xi) == doctest::Approx(g.at(xi)).epsilon(1e-13));
    }
    // int g = h(0) by Fourier inversion at 0
    double total = gl_composite([&](double xi) { return g.at(xi); }, -14.0, 14.0, 200);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("selberg_q substitution") {
    auto h = [](double r) { return std::exp(-r * r); };
    GTable g = selberg_g(h, 7.0, 14.0, 2001);
    QFunc q = selberg_q(g);
    CHECK(q.q(0.0) == doctest::Approx(g.at(0.0) / 2.0).epsilon(1e-13));
    // rapid decay inherited from g
    CHECK(std::abs(q.q(std::sinh(6.0) * std::sinh(6.0))) < 1e-14);
    // qprime agrees with a centered difference
    for (double v : {0.01, 0.2, 1.0}) {
        double h0 = 1e-6;
        double fd = (q.q(v + h0) - q.q(v - h0)) / (2 * h0);
        CHECK(q.qprime(v) == doctest::Approx(fd).epsilon(1e-5));
    }
}

TEST_CASE("selberg_k self-consistency at u = 0") {
    auto h = [](double r) { return std::exp(-r * r); };
    GTable g = selberg_g(h, 7.0, 14.0, 2001);
    QFunc q = selberg_q(g);
    KFunc k = selberg_k(q);
    CHECK(std::abs(k.eval(0.0) - k.k0_by_parts()) < 1e-8);
    // decay in u
    CHECK(std::abs(k.eval(200.0)) < std::abs(k.eval(1.0)));
}

TEST_CASE("gaussian round trip through the forward transform") {
    double Tg = 5.0;
    auto h = [&](double r) { return std::exp(-(r / Tg) * (r / Tg)); };
    double ximax = 13.0 / Tg;
    GTable g = selberg_g(h, 6.5 * Tg, ximax, 3001);
    QFunc q = selberg_q(g);
    KFunc k = selberg_k(q);
    double umax = 4.0 * std::pow(std::sinh(ximax / 2.0), 2);
    KernelTable kt = tabulate_kernel(k, umax, 4001);
    for (double r : {0.0, 2.0, 5.0, 10.0, 20.0}) {
        auto [hv, resid] = spherical_forward([&](double u) { return kt.at(u); }, umax, r, 2);
        CHECK(std::abs(hv - h(r)) <= 1e-4 * h(r));
        CHECK(std::abs(resid) < 1e-8);
    }
}

TEST_CASE("forward transform is linear") {
    double Tg = 5.0;
    auto h = [&](double r) { return std::exp(-(r / Tg) * (r / Tg)); };
    double ximax = 13.0 / Tg;
    GTable g = selberg_g(h, 6.5 * Tg, ximax, 1501);
    QFunc q = selberg_q(g);
    KFunc k = selberg_k(q);
    double umax = 4.0 * std::pow(std::sinh(ximax / 2.0), 2);
    KernelTable kt = tabulate_kernel(k, umax, 1501);
    double r = 1.7;
    auto one = spherical_forward([&](double u) { return kt.at(u); }, umax, r).first;
    auto two = spherical_forward([&](double u) { return 2.0 * kt.at(u); }, umax, r).first;
    CHECK(two == doctest::Approx(2.0 * one).epsilon(1e-12));
}

TEST_CASE("test kernel properties") {
    for (double T : {16.0, 64.0}) {
        KernelPair kp = build_test_kernel(T);
        CHECK(kp.u_max == 1.0);
        CHECK(kp.k.at(1.0001) == 0.0);
        CHECK(kp.h_min_on_band >= 0.3);
        // h >= 0 by construction (sum of squares); sample anyway
        for (int i = 0; i <= 50; ++i) CHECK(kp.h(i * (T + 5) / 50.0) >= -1e-14);
        CHECK(kp.c_sup > 0.0);
        CHECK(kp.c_quarter > 0.0);
        CHECK(std::abs(kp.h_at_half_i) < 0.05);  // bump decay at distance T
    }
    // the h(i/2) residue keeps shrinking with T
    CHECK(std::abs(build_test_kernel(64.0).h_at_half_i) <
          std::abs(build_test_kernel(16.0).h_at_half_i) + 1e-6);
    CHECK_THROWS_AS(build_test_kernel(0.1), std::domain_error);
}

TEST_CASE("test kernel interpolation error by node doubling") {
    double T = 16.0;
    GTable g = test_kernel_gtable(T);
    QFunc q = selberg_q(g);
    KFunc k = selberg_k(q, T + 2.0);
    KernelTable k1 = tabulate_kernel(k, 1.0, 700);
    KernelTable k2 = tabulate_kernel(k, 1.0, 1399);
    double m = k2.max_abs();
    double worst = 0.0;
    for (int i = 0; i < 500; ++i) {
        double u = (i + 0.37) / 500.0;
        worst = std::max(worst, std::abs(k1.at(u) - k2.at(u)));
    }
    CHECK(worst <= 1e-8 * m);
}

TEST_CASE("convolution-route g agrees with the Fourier-route g") {
    // g_T from G cos(T xi) against the direct quadrature of h_T
    double T = 16.0;
    KernelPair kp = build_test_kernel(T);
    GTable conv = test_kernel_gtable(T);
    GTable four = selberg_g(kp.h, T + 60.0, conv.xi_max, 1201);
    double worst = 0.0;
    for (int i = 0; i <= 100; ++i) {
        double xi = conv.xi_max * i / 100.0;
        worst = std::max(worst, std::abs(conv.at(xi) - four.at(xi)));
    }
    CHECK(worst < 1e-4);
}

TEST_CASE("test kernel round trip against its own h") {
    double T = 16.0;
    KernelPair kp = build_test_kernel(T);
    for (double r : {T - 0.5, T, T + 0.5}) {
        auto [hv, resid] = spherical_forward([&](double u) { return kp.k.at(u); }, 1.0, r, 2);
        CHECK(std::abs(hv - kp.h(r)) <= 2e-3 * std::max(1.0, kp.h(r)));
    }
}

TEST_CASE("bump transform basics") {
    CHECK(bump_hat(0.0) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(bump_hat(0.5) > 0.9);
    CHECK(std::abs(bump_hat(40.0)) < 0.05);
}
