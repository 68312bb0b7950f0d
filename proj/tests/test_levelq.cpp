#include "eislab/levelq.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace eislab;
using namespace eislab::levelq;
using modgroup::UpperHalfPoint;

TEST_CASE("cusp enumeration") {
    auto c1 = cusps(1);
    REQUIRE(c1.size() == 1);
    CHECK(c1[0].v == 1);
    CHECK(c1[0].w == 1);
    CHECK(c1[0].is_infinity());

    auto c6 = cusps(6);
    REQUIRE(c6.size() == 4);
    std::vector<i64> vs, ws;
    for (auto& c : c6) {
        vs.push_back(c.v);
        ws.push_back(c.w);
    }
    CHECK(vs == std::vector<i64>{1, 2, 3, 6});
    CHECK(ws == std::vector<i64>{6, 3, 2, 1});

    for (i64 q : {1, 2, 3, 5, 6, 7, 10, 30, 105, 210}) {
        for (auto& c : cusps(q)) {
            auto d = c.dual().dual();
            CHECK(d.v == c.v);
            CHECK(d.w == c.w);
        }
    }
    CHECK_THROWS_AS(cusps(4), std::invalid_argument);
    CHECK_THROWS_AS(cusps(12), std::invalid_argument);
}

TEST_CASE("zeta_q values") {
    CHECK(std::abs(zeta_q(1, cplx(2.0, 0)) - 1.0) == 0.0);
    CHECK(std::abs(zeta_q(6, cplx(2.0, 0)) - 1.5) < 1e-14);
    for (double t : {0.5, 3.0, 40.0}) {
        for (i64 q : {2, 6, 10, 30}) {
            double bound = 1.0;
            for (auto [p, e] : factorize(q)) bound /= (1.0 - 1.0 / (double)p);
            CHECK(std::abs(zeta_q(q, cplx(1.0, 2 * t))) <= bound + 1e-12);
        }
    }
}

TEST_CASE("q = 1 collapses to the level-1 evaluator") {
    Cusp c{1, 1, 1};
    UpperHalfPoint z{0.21, 1.3};
    SpectralPoint s{0.5, 17.0};
    auto cv = eisenstein_cusp(c, z, s);
    auto ev = eisenstein::eisenstein_fourier(modgroup::reduce_sl2(z).z, s);
    CHECK(cv.delta_a == 1);
    CHECK(std::abs(cv.total - ev.total) < 1e-10 * std::abs(ev.total));
    // phi_a = phi(s) exactly at q = 1
    CHECK(std::abs(cv.phi_a - eisenstein::scattering_phi(s)) < 1e-13);
}

TEST_CASE("delta coefficient telescopes to the cusp indicator") {
    for (i64 q : {2, 3, 5, 6, 7, 10}) {
        for (auto& c : cusps(q)) {
            double want = c.is_infinity() ? 1.0 : 0.0;
            CHECK(std::abs(delta_coefficient(c, cplx(2.0, 0)) - want) < 1e-12);
            CHECK(std::abs(delta_coefficient(c, cplx(0.5, 8.0)) - want) < 1e-12);
        }
    }
}

TEST_CASE("level-lowering vs direct coset sum at sigma = 2") {
    std::mt19937_64 rng(41);
    for (i64 q : {2, 3, 6}) {
        for (auto& c : cusps(q)) {
            UpperHalfPoint z{0.2, 1.1};
            cplx direct = eisenstein_cusp_direct(c, z, {2.0, 0});
            cplx comb = eisenstein_cusp(c, z, {2.0, 0}).total;
            CHECK(std::abs(direct - comb) / std::abs(direct) < 1e-8);
        }
    }
}

TEST_CASE("fricke relation on the direct sums at s = 2") {
    for (i64 q : {2, 3, 6}) {
        for (auto& c : cusps(q)) {
            UpperHalfPoint z{0.17, 0.9};
            auto zf = modgroup::fricke(q, z);
            cplx lhs = eisenstein_cusp_direct(c, zf, {2.0, 0});
            cplx rhs = eisenstein_cusp_direct(c.dual(), z, {2.0, 0});
            CHECK(std::abs(lhs - rhs) / std::abs(rhs) < 1e-8);
        }
    }
}

TEST_CASE("Gamma_0(q) invariance of each cusp series") {
    // gamma = (1, 0; q, 1) and (1, 1; 0, 1) lie in Gamma_0(q)
    for (i64 q : {2, 6}) {
        for (auto& c : cusps(q)) {
            UpperHalfPoint z{0.05, 1.4};
            modgroup::IntegerMatrix2 g{1, 0, q, 1};
            auto gz = modgroup::apply(g, z);
            cplx a = eisenstein_cusp(c, z, {2.0, 0}).total;
            cplx b = eisenstein_cusp(c, gz, {2.0, 0}).total;
            CHECK(std::abs(a - b) / std::abs(a) < 1e-8);
        }
    }
}

TEST_CASE("fricke relation through the Fourier path at s = 1/2 + 20i") {
    for (i64 q : {2, 6}) {
        for (auto& c : cusps(q)) {
            UpperHalfPoint z{0.23, 1.05};
            SpectralPoint s{0.5, 20.0};
            cplx lhs = eisenstein_cusp(c, modgroup::fricke(q, z), s).total;
            cplx rhs = eisenstein_cusp(c.dual(), z, s).total;
            CHECK(std::abs(lhs - rhs) / std::abs(rhs) < 1e-6);
        }
    }
}

TEST_CASE("f_remainder_cusp at q = 1 equals the level-1 remainder") {
    UpperHalfPoint z{0.12, 2.2};
    SpectralPoint s{0.5, 14.0};
    cplx a = f_remainder_cusp({1, 1, 1}, z, s);
    cplx b = eisenstein::f_remainder(z, s);
    CHECK(std::abs(a - b) < 1e-9 * std::max(1.0, std::abs(b)));
}
