#pragma once

// Selberg transform chain h -> g -> q -> k, the forward spherical transform
// for round-trip validation, and the localized test kernel k_T with its
// property suite.

#include "eislab/numeric.hpp"

#include <functional>
#include <string>
#include <vector>

namespace eislab::kernel {

struct PropertyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// g and its first two derivatives tabulated on a uniform grid in xi >= 0,
// with even extension. The carrier for the q -> k steps.
struct GTable {
    double dxi = 0.0;
    double xi_max = 0.0;
    std::vector<double> g, g1, g2;
    double at(double xi) const;    // g(xi)
    double d1(double xi) const;    // g'(xi)
    double d2(double xi) const;    // g''(xi)
    double v_max() const;          // sinh^2(xi_max / 2)
};

// g(xi) = (1/2pi) int e^{-i r xi} h(r) dr for even real h, by quadrature over
// |r| <= r_max with the grid resolving both the oscillation and h itself.
GTable selberg_g(const std::function<double(double)>& h, double r_max,
                 double xi_max, int xi_nodes);

// q(v) = g(2 log(sqrt(v+1) + sqrt(v))) / 2 and its derivative.
struct QFunc {
    const GTable* g;
    double q(double v) const;
    double qprime(double v) const;
    double qsecond(double v) const;  // for the k(0) integration-by-parts check
};

QFunc selberg_q(const GTable& g);

// k(u) = -(1/pi) int_{u/4}^inf (v - u/4)^{-1/2} dq(v), evaluated as
// -(2/pi) int_0^W q'(u/4 + w^2) dw.
struct KFunc {
    QFunc q;
    double phase_rate;  // oscillation scale of g' (~T for the test kernel)
    double eval(double u) const;
    double k0_by_parts() const;  // self-consistency route for k(0)
};

KFunc selberg_k(const QFunc& q, double phase_rate = 1.0);

// Tabulated radial kernel: uniform grid in rho = sqrt(u).
struct KernelTable {
    double u_max = 0.0;
    double drho = 0.0;
    std::vector<double> k;  // k[i] = k((i * drho)^2)
    double at(double u) const;
    double max_abs() const;
};

KernelTable tabulate_kernel(const KFunc& kf, double u_max, int nodes);

// Forward spherical transform h(t) = int_H k(u(z,i)) Im(z)^{1/2+it} dmu(z),
// restricted to u <= u_max. Returns (value, imag_residual).
std::pair<double, double> spherical_forward(const std::function<double(double)>& k,
                                            double u_max, double t, int refine = 1);

struct KernelPair {
    double T = 0.0;
    std::function<double(double)> h;  // exact-by-construction >= 0 on R
    KernelTable k;
    double u_max = 1.0;
    double decay_tail_bound = 0.0;  // |k| beyond u_max (0: compact support)
    double interp_error = 0.0;      // table interpolation bound estimate
    // fitted property constants
    double h_min_on_band = 0.0;   // min over [T, T+1]
    double c_sup = 0.0;           // max |k| / T
    double c_quarter = 0.0;       // sup |k(u)| u^{1/4} / sqrt(T) on [T^-2, 1]
    // exact signed h(i/2); the discarded constant-eigenfunction term enters
    // the pre-trace budget only when this is negative
    double h_at_half_i = 0.0;
};

// Localized test kernel: g_T(xi) = (g0 * g0)(xi) cos(T xi) with g0 a smooth
// bump supported in |xi| <= asinh(1/2), so that k_T is supported in [0,1]
// and h_T(r) = (g0_hat(r-T)^2 + g0_hat(r+T)^2)/2 is nonnegative by
// construction. Throws PropertyError listing the violated clause.
KernelPair build_test_kernel(double T);

// Fourier transform of the bump, exposed for the h_T formula and tests.
double bump_hat(double rho);
cplx bump_hat_complex(cplx rho);

// The g-table behind build_test_kernel: (g0 * g0)(xi) cos(T xi) with
// derivatives; exposed so tests can re-tabulate at other resolutions.
GTable test_kernel_gtable(double T);

}  // namespace eislab::kernel
