#pragma once

// Shared numerical toolkit: compensated accumulators, Gauss-Legendre rules,
// panel and adaptive quadrature, deterministic block reduction.

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace eislab {

using cplx = std::complex<double>;

inline constexpr double PI = 3.141592653589793238462643383279502884;

// ---------------------------------------------------------------- accumulators

struct Kahan {
    double s = 0.0, c = 0.0;
    void add(double x) {
        double y = x - c;
        double t = s + y;
        c = (t - s) - y;
        s = t;
    }
    double value() const { return s; }
};

struct KahanC {
    Kahan re, im;
    void add(cplx z) { re.add(z.real()); im.add(z.imag()); }
    cplx value() const { return {re.value(), im.value()}; }
};

// Double-double accumulator; the slow high-headroom fallback for sums that
// have to hold well below 1e-12 of the leading term.
struct DD {
    double hi = 0.0, lo = 0.0;
    static void two_sum(double a, double b, double& s, double& e) {
        s = a + b;
        double bb = s - a;
        e = (a - (s - bb)) + (b - bb);
    }
    void add(double x) {
        double s, e;
        two_sum(hi, x, s, e);
        e += lo;
        two_sum(s, e, hi, lo);
    }
    double value() const { return hi + lo; }
};

// ---------------------------------------------------------------- Gauss-Legendre

struct GLRule {
    std::vector<double> x, w;  // nodes/weights on [-1,1]
};

// Nodes by Newton iteration on P_n; cached per order.
const GLRule& gl_rule(int n);

template <class F>
double gl_integrate(F&& f, double a, double b, int order = 16) {
    const GLRule& r = gl_rule(order);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    Kahan acc;
    for (size_t i = 0; i < r.x.size(); ++i)
        acc.add(r.w[i] * f(mid + half * r.x[i]));
    return half * acc.value();
}

template <class F>
cplx gl_integrate_c(F&& f, double a, double b, int order = 16) {
    const GLRule& r = gl_rule(order);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    KahanC acc;
    for (size_t i = 0; i < r.x.size(); ++i)
        acc.add(r.w[i] * f(mid + half * r.x[i]));
    return half * acc.value();
}

// Adaptive bisection with a GL(15)/two-halves error estimate.
template <class F>
double integrate_adaptive(F&& f, double a, double b, double abs_tol, int max_depth = 28) {
    struct Rec {
        static double go(F& f, double a, double b, double whole, double tol, int depth) {
            double m = 0.5 * (a + b);
            double left = gl_integrate(f, a, m, 15);
            double right = gl_integrate(f, m, b, 15);
            double delta = left + right - whole;
            if (depth <= 0 || std::abs(delta) <= tol)
                return left + right + delta / 63.0;
            return go(f, a, m, left, 0.5 * tol, depth - 1) +
                   go(f, m, b, right, 0.5 * tol, depth - 1);
        }
    };
    double whole = gl_integrate(f, a, b, 15);
    return Rec::go(f, a, b, whole, abs_tol, max_depth);
}

// Composite GL over n equal panels.
template <class F>
double gl_composite(F&& f, double a, double b, int panels, int order = 16) {
    Kahan acc;
    double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p)
        acc.add(gl_integrate(f, a + p * h, a + (p + 1) * h, order));
    return acc.value();
}

template <class F>
cplx gl_composite_c(F&& f, double a, double b, int panels, int order = 16) {
    KahanC acc;
    double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p)
        acc.add(gl_integrate_c(f, a + p * h, a + (p + 1) * h, order));
    return acc.value();
}

// --------------------------------------------- deterministic parallel reduction

// Sum f(i), i in [0,n), with a fixed chunking that is independent of the
// thread count: chunk partials are computed in parallel, then combined in
// chunk order. Bitwise reproducible for any EISLAB_THREADS value.
template <class F>
double det_block_sum(std::int64_t n, std::int64_t chunk, F&& f, bool parallel = true) {
    if (n <= 0) return 0.0;
    if (chunk < 1) chunk = 1;
    const std::int64_t nblocks = (n + chunk - 1) / chunk;
    std::vector<double> partial(nblocks);
#pragma omp parallel for schedule(dynamic, 1) if (parallel && nblocks > 1)
    for (std::int64_t b = 0; b < nblocks; ++b) {
        Kahan acc;
        const std::int64_t hi = std::min(n, (b + 1) * chunk);
        for (std::int64_t i = b * chunk; i < hi; ++i) acc.add(f(i));
        partial[b] = acc.value();
    }
    Kahan total;
    for (double p : partial) total.add(p);
    return total.value();
}

template <class F>
cplx det_block_sum_c(std::int64_t n, std::int64_t chunk, F&& f, bool parallel = true) {
    if (n <= 0) return {0.0, 0.0};
    if (chunk < 1) chunk = 1;
    const std::int64_t nblocks = (n + chunk - 1) / chunk;
    std::vector<cplx> partial(nblocks);
#pragma omp parallel for schedule(dynamic, 1) if (parallel && nblocks > 1)
    for (std::int64_t b = 0; b < nblocks; ++b) {
        KahanC acc;
        const std::int64_t hi = std::min(n, (b + 1) * chunk);
        for (std::int64_t i = b * chunk; i < hi; ++i) acc.add(f(i));
        partial[b] = acc.value();
    }
    KahanC total;
    for (cplx p : partial) total.add(p);
    return total.value();
}

}  // namespace eislab
