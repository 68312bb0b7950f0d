#include "eislab/levelq.hpp"

#include <cmath>
#include <stdexcept>

namespace eislab::levelq {

using eisenstein::eisenstein_fourier;
using eisenstein::eisenstein_lattice;
using eisenstein::scattering_phi;

std::vector<Cusp> cusps(i64 q) {
    if (!is_squarefree(q)) throw std::invalid_argument("cusps: q must be square-free");
    std::vector<Cusp> out;
    for (i64 v : divisors(q)) out.push_back({q, v, q / v});
    return out;
}

cplx zeta_q(i64 q, cplx s) {
    cplx prod = 1.0;
    for (auto [p, e] : factorize(q)) {
        cplx pms = std::exp(-s * std::log((double)p));
        if (std::abs(1.0 - pms) < 1e-14)
            throw std::domain_error("zeta_q: p^{-s} = 1");
        prod /= (1.0 - pms);
    }
    return prod;
}

// Shared prefactor zeta_q(2s) mu(v) (qv)^{-s} of the level-lowering identity.
static cplx lowering_prefactor(const Cusp& c, cplx s) {
    return zeta_q(c.q, 2.0 * s) * (double)mobius(c.v) *
           std::exp(-s * std::log((double)(c.q * c.v)));
}

cplx delta_coefficient(const Cusp& c, cplx s) {
    // sum_{beta|v} mu(beta) beta^{2s} * sum_{gamma|w} mu(gamma)
    cplx sb = 0.0;
    for (i64 b : divisors(c.v)) sb += (double)mobius(b) * std::exp(2.0 * s * std::log((double)b));
    double sg = 0.0;
    for (i64 g : divisors(c.w)) sg += mobius(g);
    return lowering_prefactor(c, s) * sb * sg;
}

cplx phi_cusp(const Cusp& c, cplx s) {
    // prefactor * phi(s) * prod_{p|v}(1-p) * prod_{p|w}(1-p^{1-2s})
    cplx prod = 1.0;
    for (auto [p, e] : factorize(c.v)) prod *= (1.0 - (double)p);
    for (auto [p, e] : factorize(c.w))
        prod *= (1.0 - std::exp((1.0 - 2.0 * s) * std::log((double)p)));
    cplx phi = scattering_phi({s.real(), s.imag()});
    return lowering_prefactor(c, s) * phi * prod;
}

CuspEisensteinValue eisenstein_cusp(const Cusp& c, const UpperHalfPoint& z,
                                    const SpectralPoint& sp, double tol,
                                    KBesselCache* cache) {
    if (c.v < 1 || c.q % c.v != 0 || c.v * c.w != c.q)
        throw std::invalid_argument("eisenstein_cusp: malformed cusp");
    cplx s(sp.sigma, sp.T);
    cplx pref = lowering_prefactor(c, s);

    KahanC racc;
    double tail = 0.0;
    cplx phi1 = scattering_phi(sp);
    for (i64 beta : divisors(c.v)) {
        for (i64 gamma : divisors(c.w)) {
            int mu = mobius(beta * gamma);
            if (mu == 0) continue;  // q square-free: never for beta|v, gamma|w
            double scale = (double)(beta * gamma);
            cplx weight = (double)mu *
                          std::exp(s * std::log((double)beta) - s * std::log((double)gamma));
            UpperHalfPoint zs{scale * z.x, scale * z.y};
            // evaluate E at the SL2(Z)-reduced point, subtract the main terms
            // at zs itself: F(zs) with far fewer Bessel terms
            auto red = modgroup::reduce_sl2(zs);
            EisensteinValue ev = eisenstein_fourier(red.z, sp, tol, cache);
            cplx ys_l = std::exp(s * std::log(zs.y));
            cplx y1s_l = std::exp((1.0 - s) * std::log(zs.y));
            cplx F = ev.total - ys_l - phi1 * y1s_l;
            racc.add(weight * F);
            tail += std::abs(weight) * ev.tail_bound;
        }
    }
    cplx remainder = pref * racc.value();
    tail *= std::abs(pref);

    int delta = c.is_infinity() ? 1 : 0;
    cplx phi_a = phi_cusp(c, s);
    cplx ys = std::exp(s * std::log(z.y));
    cplx y1s = std::exp((1.0 - s) * std::log(z.y));
    cplx total = (double)delta * ys + phi_a * y1s + remainder;
    return {total, delta, phi_a, remainder, tail};
}

cplx eisenstein_cusp_direct(const Cusp& c, const UpperHalfPoint& z,
                            const SpectralPoint& sp, double radius, bool tail_correction) {
    if (sp.sigma < 2.0)
        throw std::domain_error("eisenstein_cusp_direct: requires sigma >= 2");
    const double y = z.y, x = z.x, R = radius, R2 = R * R;
    const i64 v = c.v, w = c.w;
    cplx s(sp.sigma, sp.T);
    const bool fast2 = (sp.T == 0.0 && sp.sigma == 2.0);
    const bool fast3 = (sp.T == 0.0 && sp.sigma == 3.0);

    const double vy = (double)v * y;
    const i64 cmax = (i64)std::floor(R / vy);
    cplx sum = det_block_sum_c(2 * cmax + 1, 1, [&](i64 idx) -> cplx {
        const i64 cc = idx - cmax;
        const double cvy = cc * vy;
        const double wd = std::sqrt(std::max(0.0, R2 - cvy * cvy));
        const double cvx = cc * (double)v * x;
        const i64 dlo = (i64)std::ceil(-cvx - wd), dhi = (i64)std::floor(-cvx + wd);
        KahanC acc;
        for (i64 d = dlo; d <= dhi; ++d) {
            if (cc == 0 && d == 0) continue;
            if (std::gcd(cc, d) != 1) continue;
            if (std::gcd(cc, w) != 1) continue;
            if (std::gcd(v, d) != 1) continue;
            const double re = cvx + d;
            const double w2 = re * re + cvy * cvy;
            if (fast2)
                acc.add(1.0 / (w2 * w2));
            else if (fast3)
                acc.add(1.0 / (w2 * w2 * w2));
            else
                acc.add(std::exp(-s * std::log(w2)));
        }
        return acc.value();
    });

    cplx yws = std::exp(s * std::log(y / (double)w));
    cplx total = 0.5 * yws * sum;
    if (tail_correction) {
        // congruence-constrained coprime-pair continuum tail; the Moebius
        // scales restricted to (g,q)=1 contribute zeta_q(2)/zeta(2) at the
        // R^{2-2s} order.
        double dens = 1.0;
        for (auto [p, e] : factorize(c.q)) dens *= (1.0 - 1.0 / (double)p);
        // dens = phi(v)phi(w)/(vw) since q = v w square-free
        double zq2 = 1.0;
        for (auto [p, e] : factorize(c.q)) zq2 /= (1.0 - 1.0 / ((double)p * p));
        double scale_sum = zq2 * 6.0 / (PI * PI);  // zeta_q(2)/zeta(2)
        cplx tail = 0.5 * yws * dens * scale_sum * (2.0 * PI / vy) *
                    std::exp((2.0 - 2.0 * s) * std::log(R)) / (2.0 * s - 2.0);
        total += tail;
    }
    return total;
}

cplx f_remainder_cusp(const Cusp& c, const UpperHalfPoint& z, const SpectralPoint& s,
                      double tol, KBesselCache* cache) {
    return eisenstein_cusp(c, z, s, tol, cache).remainder;
}

}  // namespace eislab::levelq
