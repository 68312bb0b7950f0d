#pragma once

// Complex special functions: Gamma, Riemann zeta, the completed zeta xi,
// and the exponentially scaled K-Bessel function of imaginary order.

#include "eislab/numeric.hpp"

#include <stdexcept>

namespace eislab::specfun {

struct PoleError : std::domain_error {
    using std::domain_error::domain_error;
};

// Gamma(s), Lanczos rational approximation plus reflection.
// Throws PoleError at non-positive integers. Relative accuracy ~1e-13 wherever
// the value is representable in double; log_gamma covers the rest of the range.
cplx complex_gamma(cplx s);

// Principal-style log Gamma, stable for |Im s| up to ~1000; exp(log_gamma(s))
// reproduces complex_gamma(s) up to a multiple of 2*pi*i in the argument.
cplx log_gamma(cplx s);

// Riemann zeta by Euler-Maclaurin. Requires Re s > -1 and s != 1.
// Intended region Re s >= 1/2, |Im s| <= 1000 (relative error <= 1e-10).
cplx zeta(cplx s);

// Same evaluation with the truncation point scaled up and double-double
// accumulation of the main sum; self-consistency oracle for zeta.
cplx zeta_highres(cplx s, int extra_terms);

// xi(s) = pi^{-s/2} Gamma(s/2) zeta(s).
cplx xi(cplx s);

// log xi(s); the building block for 1/xi(1+2iT) at large T.
cplx log_xi(cplx s);

struct ScaledBesselValue {
    double value;  // e^{pi t / 2} K_{it}(u), real
    double t;
    double u;
};

// Scaled K-Bessel of imaginary order. Domain: 0 <= t <= 512, u > 0.
// Absolute error <= 1e-10 * max(1, |value|).
ScaledBesselValue bessel_k_scaled(double t, double u);

// Same with the quadrature phase budget tightened by `refine` (>= 2 halves the
// panel length); node-doubling self-consistency hook for tests.
ScaledBesselValue bessel_k_scaled_refined(double t, double u, int refine);

// Real-order K_{nu} for half-integer nu in {1/2, 3/2, 5/2}; closed forms.
// Used by the Fourier expansion of E(z,s) at real s in {2, 3}.
double bessel_k_half(int twice_nu, double x);

}  // namespace eislab::specfun
