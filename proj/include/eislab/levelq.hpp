#pragma once

// Eisenstein series at square-free level q: cusp enumeration, zeta_q, the
// level-lowering evaluator, the direct coset-sum oracle, the constant term
// phi_a, and the Fricke/Atkin-Lehner relation.

#include "eislab/eisenstein.hpp"

namespace eislab::levelq {

using eisenstein::EisensteinValue;
using eisenstein::KBesselCache;
using eisenstein::SpectralPoint;
using modgroup::UpperHalfPoint;

struct Cusp {
    i64 q;
    i64 v;  // cusp a ~ 1/v, v | q
    i64 w;  // width q/v; v = q means a ~ infinity
    Cusp dual() const { return {q, w, v}; }
    bool is_infinity() const { return v == q; }
};

struct CuspEisensteinValue {
    cplx total;      // delta_a y^s + phi_a y^{1-s} + remainder, as stored
    int delta_a;     // 1 iff v = q
    cplx phi_a;      // constant-term coefficient of y^{1-s}
    cplx remainder;  // F_a(z,s)
    double tail_bound;
};

// All 2^{omega(q)} cusps of Gamma_0(q), ordered by v.
std::vector<Cusp> cusps(i64 q);

// zeta_q(s) = prod_{p | q} (1 - p^{-s})^{-1}.
cplx zeta_q(i64 q, cplx s);

// Coefficient of the y^s term reconstructed from the level-lowering identity;
// equals delta_a when the divisor-sum telescoping holds.
cplx delta_coefficient(const Cusp& cusp, cplx s);

// phi_a(s) by constant-term extraction from the level-lowering identity.
cplx phi_cusp(const Cusp& cusp, cplx s);

// E_a(z,s) through the level-lowering identity (finite double divisor sum of
// level-1 evaluations). sigma = 1/2 or s real in {2,3}, as in eisenstein.
CuspEisensteinValue eisenstein_cusp(const Cusp& cusp, const UpperHalfPoint& z,
                                    const SpectralPoint& s, double tol = 1e-12,
                                    KBesselCache* cache = nullptr);

// Direct truncated coset sum (1/2)(y/w)^s sum* |cvz+d|^{-2s} over (c,d)=1,
// (c,w)=1, (v,d)=1, with continuum tail correction. Oracle for sigma >= 2.
cplx eisenstein_cusp_direct(const Cusp& cusp, const UpperHalfPoint& z,
                            const SpectralPoint& s, double radius = 1000.0,
                            bool tail_correction = true);

// F_a(z,s) = E_a - delta_a y^s - phi_a y^{1-s}.
cplx f_remainder_cusp(const Cusp& cusp, const UpperHalfPoint& z, const SpectralPoint& s,
                      double tol = 1e-12, KBesselCache* cache = nullptr);

}  // namespace eislab::levelq
