#include "eislab/modgroup.hpp"

#include <doctest.h>

#include <array>
#include <cmath>
#include <random>
#include <set>

using namespace eislab;
using namespace eislab::modgroup;

static double urand(std::mt19937_64& rng) {
    return std::ldexp((double)(rng() >> 11), -53);
}

TEST_CASE("apply basics") {
    UpperHalfPoint i{0, 1};
    auto same = apply(IntegerMatrix2::identity(), i);
    CHECK(same.x == doctest::Approx(0.0));
    CHECK(same.y == doctest::Approx(1.0));
    auto inv = apply({0, -1, 1, 0}, i);
    CHECK(inv.x == doctest::Approx(0.0));
    CHECK(inv.y == doctest::Approx(1.0));
    auto tr = apply({1, 1, 0, 1}, i);
    CHECK(tr.x == doctest::Approx(1.0));
    CHECK(tr.y == doctest::Approx(1.0));
}

TEST_CASE("height formula Im(gz) |cz+d|^2 = det y") {
    std::mt19937_64 rng(7);
    for (int k = 0; k < 200; ++k) {
        i64 a = (i64)(rng() % 9) - 4, b = (i64)(rng() % 9) - 4;
        i64 c = (i64)(rng() % 9) - 4, d = (i64)(rng() % 9) - 4;
        IntegerMatrix2 g{a, b, c, d};
        if (g.det() <= 0) continue;
        UpperHalfPoint z{urand(rng) * 4 - 2, 0.1 + 3 * urand(rng)};
        auto w = apply(g, z);
        double den = (c * z.x + d) * (c * z.x + d) + (c * z.y) * (c * z.y);
        CHECK(w.y * den == doctest::Approx((double)g.det() * z.y).epsilon(1e-12));
    }
}

TEST_CASE("point_pair_u basics and invariance") {
    UpperHalfPoint i{0, 1}, i2{0, 2};
    CHECK(point_pair_u(i, i) == 0.0);
    CHECK(point_pair_u(i, i2) == doctest::Approx(0.5).epsilon(1e-15));
    std::mt19937_64 rng(11);
    for (int k = 0; k < 100; ++k) {
        // random det-1 matrix from generator words
        IntegerMatrix2 g = IntegerMatrix2::identity();
        for (int j = 0; j < 6; ++j) {
            if (rng() & 1)
                g = g.mul({0, -1, 1, 0});
            else
                g = g.mul({1, (i64)(rng() % 5) - 2, 0, 1});
        }
        UpperHalfPoint z{urand(rng) * 2 - 1, 0.2 + 2 * urand(rng)};
        UpperHalfPoint w{urand(rng) * 2 - 1, 0.2 + 2 * urand(rng)};
        double u1 = point_pair_u(z, w);
        double u2 = point_pair_u(apply(g, z), apply(g, w));
        CHECK(std::abs(u1 - u2) <= 1e-12 * std::max(1.0, u1));
    }
}

TEST_CASE("point_pair_u_matrix agrees with the two-point form") {
    std::mt19937_64 rng(13);
    for (int k = 0; k < 100; ++k) {
        i64 a = (i64)(rng() % 11) - 5, b = (i64)(rng() % 11) - 5;
        i64 c = (i64)(rng() % 11) - 5, d = (i64)(rng() % 11) - 5;
        IntegerMatrix2 g{a, b, c, d};
        i64 det = g.det();
        if (det <= 0) continue;
        UpperHalfPoint z{urand(rng) * 2 - 1, 0.3 + 2 * urand(rng)};
        double u1 = point_pair_u_matrix(g, z, det);
        double u2 = point_pair_u(apply(g, z), z);
        CHECK(std::abs(u1 - u2) <= 1e-10 * std::max(1.0, u1));
    }
}

TEST_CASE("reduce_sl2 fixed cases") {
    auto r1 = reduce_sl2({0, 1});
    CHECK(r1.z.x == doctest::Approx(0.0));
    CHECK(r1.z.y == doctest::Approx(1.0));
    CHECK(r1.gamma == IntegerMatrix2::identity());

    auto r2 = reduce_sl2({0, 0.5});
    CHECK(r2.z.y == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(r2.gamma.a == 0);
    CHECK(r2.gamma.b == -1);
    CHECK(r2.gamma.c == 1);
    CHECK(r2.gamma.d == 0);
}

// breadth-first search over words in S, T^{+-1}: the exhaustive oracle
static double best_height_by_words(const UpperHalfPoint& z, int depth) {
    std::set<std::array<i64, 4>> seen;
    std::vector<IntegerMatrix2> frontier{IntegerMatrix2::identity()};
    seen.insert({1, 0, 0, 1});
    double best = z.y;
    const IntegerMatrix2 gens[3] = {{0, -1, 1, 0}, {1, 1, 0, 1}, {1, -1, 0, 1}};
    for (int step = 0; step < depth; ++step) {
        std::vector<IntegerMatrix2> next;
        for (const auto& m : frontier) {
            for (const auto& g : gens) {
                IntegerMatrix2 w = g.mul(m);
                std::array<i64, 4> key{w.a, w.b, w.c, w.d};
                std::array<i64, 4> keyneg{-w.a, -w.b, -w.c, -w.d};
                if (seen.count(key) || seen.count(keyneg)) continue;
                if (std::max({std::llabs(w.a), std::llabs(w.b), std::llabs(w.c),
                              std::llabs(w.d)}) > 100000)
                    continue;
                seen.insert(key);
                next.push_back(w);
                auto p = apply(w, z);
                if (in_fundamental_domain({p.x - std::round(p.x), p.y}))
                    best = std::max(best, p.y);
            }
        }
        frontier = std::move(next);
        if (frontier.empty()) break;
    }
    return best;
}

TEST_CASE("reduce_sl2 against the word-search oracle") {
    for (UpperHalfPoint z : {UpperHalfPoint{0.7, 0.1}, {0.31, 0.04}, {-0.45, 0.8}}) {
        auto r = reduce_sl2(z);
        CHECK(in_fundamental_domain(r.z));
        CHECK(r.gamma.det() == 1);
        auto mapped = apply(r.gamma, z);
        CHECK(mapped.x == doctest::Approx(r.z.x).epsilon(1e-10));
        CHECK(mapped.y == doctest::Approx(r.z.y).epsilon(1e-10));
        double oracle = best_height_by_words(z, 18);
        CHECK(r.z.y == doctest::Approx(oracle).epsilon(1e-10));
    }
}

TEST_CASE("reduce_sl2 random battery") {
    std::mt19937_64 rng(17);
    for (int k = 0; k < 200; ++k) {
        UpperHalfPoint z{urand(rng) * 6 - 3, 0.01 + 2 * urand(rng)};
        auto r = reduce_sl2(z);
        CHECK(in_fundamental_domain(r.z));
        CHECK(r.gamma.det() == 1);
        auto mapped = apply(r.gamma, z);
        CHECK(std::abs(mapped.x - r.z.x) < 1e-9);
        CHECK(std::abs(mapped.y - r.z.y) < 1e-9 * std::max(1.0, r.z.y));
        // idempotence on the result
        auto r2 = reduce_sl2(r.z);
        CHECK(std::abs(r2.z.x - r.z.x) < 1e-12);
        CHECK(std::abs(r2.z.y - r.z.y) < 1e-12);
    }
}

TEST_CASE("fricke map") {
    auto f = fricke(1, {0, 1});
    CHECK(f.x == doctest::Approx(0.0));
    CHECK(f.y == doctest::Approx(1.0));
    auto g = fricke(4, {0, 0.5});
    CHECK(g.x == doctest::Approx(0.0));
    CHECK(g.y == doctest::Approx(0.5).epsilon(1e-14));
    std::mt19937_64 rng(19);
    for (int k = 0; k < 50; ++k) {
        i64 q = 1 + (i64)(rng() % 30);
        UpperHalfPoint z{urand(rng) * 4 - 2, 0.05 + 3 * urand(rng)};
        auto zz = fricke(q, fricke(q, z));
        CHECK(std::abs(zz.x - z.x) < 1e-14 * std::max(1.0, std::abs(z.x)));
        CHECK(std::abs(zz.y - z.y) < 1e-14 * z.y);
    }
}

TEST_CASE("atkin-lehner representatives satisfy the congruences") {
    for (i64 q : {2, 3, 5, 6, 7, 10, 30, 210}) {
        for (i64 d : divisors(q)) {
            auto w = atkin_lehner_element(q, d);
            CHECK(w.matrix.det() == d);
            // upper-triangular mod q
            CHECK(w.matrix.c % q == 0);
            // all of a, c, d divisible by d
            CHECK(w.matrix.a % d == 0);
            CHECK(w.matrix.c % d == 0);
            CHECK(w.matrix.d % d == 0);
        }
    }
    CHECK_THROWS_AS(atkin_lehner_element(12, 2), std::invalid_argument);
}

TEST_CASE("reduce_a0q basics and the height floor") {
    auto r = reduce_a0q(1, {0, 1});
    CHECK(r.z.y == doctest::Approx(1.0));

    std::mt19937_64 rng(23);
    for (i64 q : {2, 3, 5, 6, 7, 10}) {
        double floor = std::sqrt(3.0) / (2.0 * q);
        for (int k = 0; k < 80; ++k) {
            UpperHalfPoint z{urand(rng) * 4 - 2, 0.003 + 2 * urand(rng)};
            auto rr = reduce_a0q(q, z);
            CHECK(rr.z.y >= floor * (1 - 1e-12));
            // idempotence
            auto rr2 = reduce_a0q(q, rr.z);
            CHECK(rr2.z.y == doctest::Approx(rr.z.y).epsilon(1e-12));
        }
    }
    CHECK_THROWS_AS(reduce_a0q(4, {0.0, 1.0}), std::invalid_argument);
}
