#include "eislab/amplifier.hpp"

#include "eislab/eisenstein.hpp"
#include "eislab/specfun.hpp"

#include <cmath>
#include <stdexcept>

namespace eislab::amplifier {

using eisenstein::eta_it;

WindowFunction default_window() {
    auto w = [](double r) -> double {
        double u = 2.0 * r - 3.0;
        if (u <= -1.0 || u >= 1.0) return 0.0;
        return std::exp(1.0 - 1.0 / (1.0 - u * u));
    };
    return {w, -1};
}

cplx mellin_w(cplx s, const WindowFunction& w, int refine) {
    // integrand vanishes to all orders at both endpoints; composite GL with
    // panel count scaled to the oscillation |Im s| log 2
    int panels = 8 * refine + (int)std::ceil(std::abs(s.imag()) * 0.7 / 4.0) * refine;
    return gl_composite_c(
        [&](double yv) { return w(yv) * std::exp((s - 1.0) * std::log(yv)); }, 1.0, 2.0,
        panels, 16);
}

AmplifierSpec build_amplifier(i64 N, double t, const WindowFunction& w) {
    if (N < 2 || N > 1000000)
        throw std::invalid_argument("build_amplifier: N must be in [2, 1e6]");
    AmplifierSpec spec{N, t, w, primes_in(N, 2 * N), {}, {}};
    if (spec.primes.empty())
        throw std::logic_error("build_amplifier: no prime in [N, 2N]");
    for (i64 p : spec.primes) {
        double xp = w((double)p / (double)N) * std::log((double)p) * eta_it(p, t);
        spec.x[p] = xp;
    }
    Kahan y1;
    for (i64 p : spec.primes) y1.add(spec.x[p] * spec.x[p]);
    spec.y[1] = y1.value();
    for (size_t i = 0; i < spec.primes.size(); ++i) {
        for (size_t j = i; j < spec.primes.size(); ++j) {
            i64 p = spec.primes[i], q = spec.primes[j];
            double xp = spec.x[p], xq = spec.x[q];
            if (xp == 0.0 && xq == 0.0) continue;
            spec.y[p * q] = (i == j) ? xp * xp : 2.0 * xp * xq;
        }
    }
    return spec;
}

double a_sum(i64 N, double t, double r, const WindowFunction& w) {
    std::vector<i64> ps = primes_in(N, 2 * N);
    return det_block_sum((i64)ps.size(), 256, [&](i64 i) {
        i64 p = ps[i];
        double lp = std::log((double)p);
        return w((double)p / (double)N) * lp * eta_it(p, t) * eta_it(p, r);
    });
}

double b_sum(i64 N, double t, double r, const WindowFunction& w) {
    Kahan acc;
    // k = 1: primes in [N, 2N]
    acc.add(a_sum(N, t, r, w));
    // k >= 2: prime powers p^k in [N, 2N]
    i64 top = 2 * N;
    for (i64 p : primes_in(2, isqrt(top))) {
        double lp = std::log((double)p);
        i64 pk = p * p;
        int k = 2;
        while (pk <= top) {
            if (pk >= N) {
                double b = 2.0 * std::cos(k * (t + r) * lp) + 2.0 * std::cos(k * (t - r) * lp);
                if (k % 2 == 0) b -= 2.0;
                acc.add(w((double)pk / (double)N) * lp * b);
            }
            if (pk > top / p) break;
            pk *= p;
            ++k;
        }
    }
    return acc.value();
}

RamanujanCheck ramanujan_check(double t, double r, double sigma, i64 n_max) {
    if (sigma < 2.0) throw std::domain_error("ramanujan_check: sigma >= 2 required");
    using specfun::zeta;

    // eta rows by sieve
    std::vector<i64> spf = spf_table(n_max);
    std::vector<double> et(n_max + 1, 1.0), er(n_max + 1, 1.0);
    for (i64 n = 2; n <= n_max; ++n) {
        i64 p = spf[n], m = n;
        int e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        double lt = t * std::log((double)p), lr = r * std::log((double)p);
        double loct = 0, locr = 0;
        for (int j = 0; j <= e; ++j) {
            loct += std::cos((e - 2 * j) * lt);
            locr += std::cos((e - 2 * j) * lr);
        }
        et[n] = et[m] * loct;
        er[n] = er[m] * locr;
    }
    double lhs = det_block_sum(n_max, 1024, [&](i64 i) {
        i64 n = i + 1;
        return et[n] * er[n] * std::pow((double)n, -sigma);
    });

    cplx s(sigma, 0.0);
    cplx it(0, t), ir(0, r);
    cplx rhs = zeta(s + it + ir) * zeta(s - it + ir) * zeta(s + it - ir) * zeta(s - it - ir) /
               zeta(2.0 * s);

    // |eta_it(n) eta_ir(n)| <= d(n)^2; sum_{n<=x} d(n)^2 ~ x log^3 x / pi^2
    // plus positive lower-order terms, so the tail beyond M is bounded by
    // partial summation with a factor-4 envelope on the cubic polynomial.
    double M = (double)n_max, L = std::log(M);
    double tail = std::pow(M, 2.0 - sigma) * (4.0 / (PI * PI)) *
                  (L * L * L + 3 * L * L + 6 * L + 6) / M;
    return {lhs, rhs, std::abs(lhs - rhs), tail};
}

std::vector<AmplifierLemmaRow> verify_amplifier_lemma(const std::vector<i64>& N_list,
                                                      double T, double offset,
                                                      const WindowFunction& w) {
    std::vector<AmplifierLemmaRow> rows;
    for (i64 N : N_list) {
        double t = T, r = T + offset;
        double an = a_sum(N, t, r, w);
        double bn = b_sum(N, t, r, w);
        double m = 2.0 * (double)N * mellin_w(cplx(1.0, 0.0), w).real();
        rows.push_back({N, an, bn, m, an / m});
    }
    return rows;
}

}  // namespace eislab::amplifier
