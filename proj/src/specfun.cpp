#include "eislab/specfun.hpp"

#include "eislab/arith.hpp"

#include <algorithm>
#include <cmath>

namespace eislab::specfun {

// ------------------------------------------------------------------ gamma

// Rational Lanczos approximation, g = 6.024680040776729583740234375, 13 terms
// (the standard double-precision coefficient set). The sum includes the
// sqrt(2*pi) factor; valid for Re z >= 0.5.
static const double lanczos_g = 6.024680040776729583740234375;

static cplx lanczos_sum(cplx z) {
    static const double num[13] = {
        23531376880.410759688572007674451636754734,
        42919803642.649098768957899047001988850926,
        35711959237.355668049440185451547166705960,
        17921034426.037209699919755754458931112671,
        6039542586.3520280050642916443072979210699,
        1439720407.3117216736632230727949123939715,
        248874557.86205415651146038641322942321632,
        31426415.585400194380614231628318205362874,
        2876370.6289353724412254090516208496135991,
        186056.26539522349504029498971604569928220,
        8071.6720023658162106380029022722506138218,
        210.82427775157934587250973392071336271166,
        2.5066282746310002701649081771338373386264,
    };
    static const double den[13] = {
        0.0, 39916800.0, 120543840.0, 150917976.0, 105258076.0, 45995730.0,
        13339535.0, 2637558.0, 357423.0, 32670.0, 1925.0, 66.0, 1.0,
    };
    cplx p = num[12], q = den[12];
    for (int i = 11; i >= 0; --i) {
        p = p * z + num[i];
        q = q * z + den[i];
    }
    return p / q;
}

static bool near_nonpositive_integer(cplx z) {
    if (std::abs(z.imag()) > 1e-13) return false;
    double r = std::round(z.real());
    return r <= 0.0 && std::abs(z.real() - r) < 1e-13;
}

// log(sin(pi z)) without overflow for large |Im z|.
static cplx log_sin_pi(cplx z) {
    if (z.imag() > 1.0) {
        cplx w = std::exp(cplx(0, 2.0 * PI) * z);  // |w| = e^{-2 pi Im z} < 1
        return cplx(0, -PI) * z + std::log(1.0 - w) + cplx(-std::log(2.0), PI / 2);
    }
    if (z.imag() < -1.0) return std::conj(log_sin_pi(std::conj(z)));
    return std::log(std::sin(PI * z));
}

cplx log_gamma(cplx s) {
    if (near_nonpositive_integer(s))
        throw PoleError("gamma pole at non-positive integer");
    if (s.real() >= 0.5) {
        cplx t = s + (lanczos_g - 0.5);
        return (s - 0.5) * std::log(t) - t + std::log(lanczos_sum(s));
    }
    return std::log(PI) - log_sin_pi(s) - log_gamma(1.0 - s);
}

cplx complex_gamma(cplx s) {
    cplx lg = log_gamma(s);
    if (lg.real() > 700.0)
        throw std::range_error("gamma overflows double range; use log_gamma");
    return std::exp(lg);
}

// ------------------------------------------------------------------ zeta

// Euler-Maclaurin with truncation at ceil(|Im s|) + 20 and six Bernoulli
// correction terms; Kahan-compensated main sum.
static cplx zeta_em(cplx s, i64 N, bool dd_mode) {
    static const double B2k[6] = {1.0 / 6,  -1.0 / 30,     1.0 / 42,
                                  -1.0 / 30, 5.0 / 66,     -691.0 / 2730};
    static const double fact2k[6] = {2.0, 24.0, 720.0, 40320.0, 3628800.0, 479001600.0};

    cplx main_sum;
    if (dd_mode) {
        DD re, im;
        for (i64 n = 1; n < N; ++n) {
            cplx term = std::exp(-s * std::log((double)n));
            re.add(term.real());
            im.add(term.imag());
        }
        main_sum = {re.value(), im.value()};
    } else {
        KahanC acc;
        for (i64 n = 1; n < N; ++n)
            acc.add(std::exp(-s * std::log((double)n)));
        main_sum = acc.value();
    }

    const double Nd = (double)N;
    cplx NmS = std::exp(-s * std::log(Nd));  // N^{-s}
    cplx result = main_sum + Nd * NmS / (s - 1.0) + 0.5 * NmS;

    // sum_k B_{2k}/(2k)! * s(s+1)...(s+2k-2) * N^{1-s-2k}
    cplx poch = s;                    // (s)_1
    cplx Npow = NmS / Nd;             // N^{-s-1}
    for (int k = 0; k < 6; ++k) {
        result += B2k[k] / fact2k[k] * poch * Npow;
        if (k < 5) {
            poch *= (s + (double)(2 * k + 1)) * (s + (double)(2 * k + 2));
            Npow /= Nd * Nd;
        }
    }
    return result;
}

cplx zeta(cplx s) {
    if (s.real() <= -1.0)
        throw std::domain_error("zeta: Re s must exceed -1");
    if (std::abs(s - cplx(1.0, 0.0)) < 1e-12)
        throw PoleError("zeta pole at s = 1");
    i64 N = (i64)std::ceil(std::abs(s.imag())) + 20;
    return zeta_em(s, N, false);
}

cplx zeta_highres(cplx s, int extra_terms) {
    if (s.real() <= -1.0)
        throw std::domain_error("zeta: Re s must exceed -1");
    if (std::abs(s - cplx(1.0, 0.0)) < 1e-12)
        throw PoleError("zeta pole at s = 1");
    i64 N = (i64)std::ceil(std::abs(s.imag())) + 20 + std::max(0, extra_terms);
    return zeta_em(s, N, true);
}

// ------------------------------------------------------------------ xi

cplx xi(cplx s) {
    if (std::abs(s) < 1e-12 || std::abs(s - cplx(1.0, 0.0)) < 1e-12)
        throw PoleError("xi pole at s in {0,1}");
    return std::exp(-(s / 2.0) * std::log(PI)) * complex_gamma(s / 2.0) * zeta(s);
}

cplx log_xi(cplx s) {
    if (std::abs(s) < 1e-12 || std::abs(s - cplx(1.0, 0.0)) < 1e-12)
        throw PoleError("xi pole at s in {0,1}");
    return -(s / 2.0) * std::log(PI) + log_gamma(s / 2.0) + std::log(zeta(s));
}

// ------------------------------------------------------------------ K-Bessel

// e^{pi t/2} K_{it}(u) through cosh(pi t/2) K_{it}(u) = I(t,u) with
//   I(t,u) = int_0^inf cos(u sinh v) cos(t v) dv.
// The integrand is O(1), so the evaluation carries no exponentially small
// cancellation in any regime. The oscillatory tail beyond
//   v0 = acosh(M/u),  M = pi t/2 + 40,
// is pushed onto the vertical segment v = v0 + i tau, 0 <= tau <= pi/2, where
// it decays like exp(-M sin tau -+ t tau); the remaining horizontal piece at
// height pi/2 is bounded by e^{-40} and absorbed into the error budget.
// For u >= M the scaled integrand e^{pi t/2 - u cosh v} is itself <= e^{-40}
// and the direct representation is used.

namespace {

struct PanelWalker {
    double budget;
    // integrate f over [a,b], panel length ~ budget / rate(v)
    template <class F, class R>
    double run(F&& f, R&& rate, double a, double b, int order = 12) const {
        Kahan acc;
        double v = a;
        int guard = 0;
        while (v < b) {
            double r = std::max(rate(v), 1e-9);
            double dv = std::min({budget / r, 0.35, b - v});
            // refine against rate growth across the panel
            double r2 = std::max(rate(std::min(b, v + dv)), r);
            dv = std::min(dv, budget / r2 * 1.25);
            dv = std::min(dv, b - v);
            acc.add(gl_integrate(f, v, v + dv, order));
            v += dv;
            if (++guard > 4000000) throw std::runtime_error("bessel_k: panel walker stuck");
        }
        return acc.value();
    }
};

}  // namespace

static double bessel_core(double t, double u, double budget) {
    const double M = PI * t / 2.0 + 40.0;
    PanelWalker walker{budget};

    if (u >= M) {
        const double pt2 = PI * t / 2.0;
        double V = std::acosh(1.0 + 60.0 / u);
        auto f = [&](double v) { return std::exp(pt2 - u * std::cosh(v)) * std::cos(t * v); };
        auto rate = [&](double v) { return t + u * std::sinh(v) + 1.0; };
        return walker.run(f, rate, 0.0, V);
    }

    const double v0 = std::acosh(M / u);
    const double sh = u * std::sinh(v0);  // = sqrt(M^2 - u^2)
    const double ch = u * std::cosh(v0);  // = M

    auto f_real = [&](double v) { return std::cos(u * std::sinh(v)) * std::cos(t * v); };
    auto rate_real = [&](double v) { return u * std::cosh(v) + t + 1.0; };
    double leg_real = walker.run(f_real, rate_real, 0.0, v0);

    // vertical segment, both exponential tails combined
    auto f_vert = [&](double tau) {
        double s, c;
        s = std::sin(tau);
        c = std::cos(tau);
        double e_minus = -ch * s - t * tau;  // e^{+i t v0} branch
        double e_plus = -ch * s + t * tau;   // e^{-i t v0} branch, still <= 0
        double phase = sh * c;
        cplx a = std::exp(e_minus) * std::polar(1.0, phase + t * v0);
        cplx b = std::exp(e_plus) * std::polar(1.0, phase - t * v0);
        cplx val = cplx(0, 1) * (a + b);
        return 0.5 * val.real();
    };
    // stop once both envelopes are below 1e-21
    double tau_end = PI / 2;
    {
        double lo = 0.0, hi = PI / 2;
        for (int i = 0; i < 60; ++i) {
            double mid = 0.5 * (lo + hi);
            if (ch * std::sin(mid) - t * mid > 49.0)
                hi = mid;
            else
                lo = mid;
        }
        tau_end = hi;
    }
    auto rate_vert = [&](double) { return ch + t + 1.0; };
    double leg_vert = walker.run(f_vert, rate_vert, 0.0, tau_end);

    double F = leg_real + leg_vert;
    return 2.0 * F / (1.0 + std::exp(-PI * t));
}

ScaledBesselValue bessel_k_scaled(double t, double u) {
    return bessel_k_scaled_refined(t, u, 1);
}

ScaledBesselValue bessel_k_scaled_refined(double t, double u, int refine) {
    if (!(t >= 0.0 && t <= 512.0) || !std::isfinite(t))
        throw std::domain_error("bessel_k_scaled: t outside [0, 512]");
    if (!(u > 0.0) || !std::isfinite(u))
        throw std::domain_error("bessel_k_scaled: u must be positive");
    double budget = 3.0 / std::max(1, refine);
    return {bessel_core(t, u, budget), t, u};
}

double bessel_k_half(int twice_nu, double x) {
    if (x <= 0) throw std::domain_error("bessel_k_half: x must be positive");
    double pref = std::sqrt(PI / (2.0 * x)) * std::exp(-x);
    switch (twice_nu) {
        case 1: return pref;
        case 3: return pref * (1.0 + 1.0 / x);
        case 5: return pref * (1.0 + 3.0 / x + 3.0 / (x * x));
        default: throw std::domain_error("bessel_k_half: 2*nu must be 1, 3 or 5");
    }
}

}  // namespace eislab::specfun
