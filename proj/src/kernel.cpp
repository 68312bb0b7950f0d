#include "eislab/kernel.hpp"

#include "eislab/arith.hpp"

#include <cmath>
#include <list>
#include <mutex>

namespace eislab::kernel {

// 4-point Lagrange interpolation on a uniform grid; parity-aware extension
// across x = 0 (sign = +1 for even functions, -1 for odd).
static double interp_parity(const std::vector<double>& f, double dx, double x, int sign) {
    double flip = 1.0;
    if (x < 0) {
        x = -x;
        flip = (sign < 0) ? -1.0 : 1.0;
    }
    double s = x / dx;
    i64 n = (i64)f.size();
    i64 i1 = (i64)std::floor(s);
    if (i1 >= n - 1) return 0.0;
    double t = s - i1;
    auto get = [&](i64 i) -> double {
        double sg = 1.0;
        if (i < 0) {
            i = -i;
            if (sign < 0) sg = -1.0;
        }
        return (i < n) ? sg * f[i] : 0.0;
    };
    double f0 = get(i1 - 1), f1 = get(i1), f2 = get(i1 + 1), f3 = get(i1 + 2);
    // Lagrange basis at nodes -1, 0, 1, 2
    double a = -t * (t - 1.0) * (t - 2.0) / 6.0;
    double b = (t + 1.0) * (t - 1.0) * (t - 2.0) / 2.0;
    double c = -t * (t + 1.0) * (t - 2.0) / 2.0;
    double d = t * (t + 1.0) * (t - 1.0) / 6.0;
    return flip * (a * f0 + b * f1 + c * f2 + d * f3);
}

double GTable::at(double xi) const { return interp_parity(g, dxi, xi, +1); }
double GTable::d1(double xi) const { return interp_parity(g1, dxi, xi, -1); }
double GTable::d2(double xi) const { return interp_parity(g2, dxi, xi, +1); }
double GTable::v_max() const {
    double s = std::sinh(xi_max / 2.0);
    return s * s;
}

GTable selberg_g(const std::function<double(double)>& h, double r_max,
                 double xi_max, int xi_nodes) {
    GTable t;
    t.xi_max = xi_max;
    t.dxi = xi_max / (xi_nodes - 1);
    t.g.resize(xi_nodes);
    t.g1.resize(xi_nodes);
    t.g2.resize(xi_nodes);
    for (int i = 0; i < xi_nodes; ++i) {
        double xi = i * t.dxi;
        int panels = 8 + (int)std::ceil(r_max * xi / 4.0);
        panels = std::min(panels, 4000);
        // g  = (1/pi) int_0^rmax h(r) cos(r xi) dr   (h even)
        // g' = -(1/pi) int r h sin, g'' = -(1/pi) int r^2 h cos
        t.g[i] = gl_composite([&](double r) { return h(r) * std::cos(r * xi); }, 0.0,
                              r_max, panels) /
                 PI;
        t.g1[i] = -gl_composite([&](double r) { return r * h(r) * std::sin(r * xi); },
                                0.0, r_max, panels) /
                  PI;
        t.g2[i] = -gl_composite([&](double r) { return r * r * h(r) * std::cos(r * xi); },
                                0.0, r_max, panels) /
                  PI;
    }
    return t;
}

static double xi_of_v(double v) { return 2.0 * std::asinh(std::sqrt(v)); }

double QFunc::q(double v) const { return 0.5 * g->at(xi_of_v(v)); }

double QFunc::qprime(double v) const {
    if (v < 0) return 0.0;
    double sq = std::sqrt(v);
    double xi = 2.0 * std::asinh(sq);
    if (v < 1e-16)  // g' ~ g''(0) xi, xi ~ 2 sqrt(v)
        return g->d2(0.0);
    return g->d1(xi) / (2.0 * sq * std::sqrt(v + 1.0));
}

double QFunc::qsecond(double v) const {
    // q'' = (g'' xi'^2 + g' xi'') / 2, xi' = 1/sqrt(v(v+1)),
    // xi'' = -(2v+1)/(2 (v(v+1))^{3/2})
    if (v < 1e-10) {
        double h = 1e-6;
        return (qprime(v + h) - qprime(std::max(0.0, v - h))) / (v < h ? (v + h) : 2 * h);
    }
    double xi = xi_of_v(v);
    double p = v * (v + 1.0);
    double xp = 1.0 / std::sqrt(p);
    double xpp = -(2.0 * v + 1.0) / (2.0 * p * std::sqrt(p));
    return 0.5 * (g->d2(xi) * xp * xp + g->d1(xi) * xpp);
}

QFunc selberg_q(const GTable& g) { return {&g}; }

double KFunc::eval(double u) const {
    double vmax = q.g->v_max();
    if (u / 4.0 >= vmax) return 0.0;
    double W = std::sqrt(vmax - u / 4.0);
    // geometric panel walk: the integrand structure lives at xi-scale O(1),
    // i.e. w-scale sqrt(v(v+1))/(2w); panels grow with w and shrink with the
    // oscillation rate of g'
    auto f = [&](double w) { return q.qprime(u / 4.0 + w * w); };
    Kahan acc;
    double w = 0.0;
    int guard = 0;
    while (w < W) {
        double v = u / 4.0 + w * w;
        double dxi_dw = 2.0 * w / std::sqrt(std::max(v * (v + 1.0), 1e-300));
        if (w < 1e-12) dxi_dw = 2.0;
        double rate = phase_rate * dxi_dw + 1.0;
        double dw = std::min({3.0 / rate, 0.35 * std::max(1.0, 0.5 * w), W - w});
        acc.add(gl_integrate(f, w, w + dw, 12));
        w += dw;
        if (++guard > 2000000) throw std::runtime_error("selberg_k: panel walker stuck");
    }
    return -2.0 / PI * acc.value();
}

double KFunc::k0_by_parts() const {
    // k(0) = -(1/pi) int_0^inf q'(v) v^{-1/2} dv; integrate by parts beyond
    // v0, keep the direct form on [0, v0]. The tail runs in the xi variable
    // (v = sinh^2(xi/2)) so that panels track the g'-structure.
    double vmax = q.g->v_max();
    double v0 = std::min(1e-4, vmax / 4);
    double head = gl_composite(
        [&](double w) { return q.qprime(w * w); }, 0.0, std::sqrt(v0), 32);
    head *= 2.0;
    double xi0 = xi_of_v(v0), xi1 = q.g->xi_max;
    int panels = 32 + (int)std::ceil(phase_rate * (xi1 - xi0) / 2.0);
    panels = std::min(panels, 40000);
    double tail = gl_composite(
        [&](double xi) {
            double sh = std::sinh(xi / 2.0);
            double v = sh * sh;
            double dv = 0.5 * std::sinh(xi);
            return q.qsecond(v) * std::sqrt(v) * dv;
        },
        xi0, xi1, panels);
    double boundary = -2.0 * std::sqrt(v0) * q.qprime(v0);
    return -(head + boundary - 2.0 * tail) / PI;
}

KFunc selberg_k(const QFunc& q, double phase_rate) { return {q, phase_rate}; }

double KernelTable::at(double u) const {
    if (u < 0 || u >= u_max) return 0.0;
    return interp_parity(k, drho, std::sqrt(u), +1);
}

double KernelTable::max_abs() const {
    double m = 0;
    for (double v : k) m = std::max(m, std::abs(v));
    return m;
}

KernelTable tabulate_kernel(const KFunc& kf, double u_max, int nodes) {
    KernelTable t;
    t.u_max = u_max;
    t.drho = std::sqrt(u_max) / (nodes - 1);
    t.k.resize(nodes);
#pragma omp parallel for schedule(dynamic, 16)
    for (int i = 0; i < nodes; ++i) {
        double rho = i * t.drho;
        t.k[i] = kf.eval(rho * rho);
    }
    return t;
}

std::pair<double, double> spherical_forward(const std::function<double(double)>& k,
                                            double u_max, double t, int refine) {
    // u(z, i) = (x^2 + (y-1)^2)/y <= u_max is the region between the roots of
    // y^2 - (2+u_max) y + 1.
    double b = 2.0 + u_max;
    double disc = std::sqrt(b * b - 4.0);
    double ylo = (b - disc) / 2.0, yhi = (b + disc) / 2.0;
    double Llo = std::log(ylo), Lhi = std::log(yhi);
    int pan_out = (16 + (int)std::ceil((Lhi - Llo) * (std::abs(t) + 6.0) / 3.0)) * refine;
    pan_out = std::min(pan_out, 6000);
    KahanC outer;
    const GLRule& r_out = gl_rule(12);
    double hstep = (Lhi - Llo) / pan_out;
    for (int p = 0; p < pan_out; ++p) {
        double a0 = Llo + p * hstep;
        for (size_t j = 0; j < r_out.x.size(); ++j) {
            double lam = a0 + hstep * 0.5 * (1.0 + r_out.x[j]);
            double y = std::exp(lam);
            double rad2 = u_max * y - (y - 1.0) * (y - 1.0);
            if (rad2 <= 0) continue;
            double X = std::sqrt(rad2);
            int pan_in = 8 * refine + (int)(X * 4);
            double inner = gl_composite(
                [&](double x) { return k((x * x + (y - 1.0) * (y - 1.0)) / y); }, 0.0, X,
                std::min(pan_in, 2000));
            // dmu = dx dy / y^2 = dx dlam / y; weight y^{1/2 + i t}
            cplx wgt = std::exp(cplx(-0.5, t) * lam);  // y^{it - 1/2}
            outer.add(r_out.w[j] * (hstep * 0.5) * 2.0 * inner * wgt);
        }
    }
    cplx v = outer.value();
    return {v.real(), v.imag()};
}

// ----------------------------------------------------------- test kernel

// Bump g0 on |xi| < xi0/2 with xi0 = 2 asinh(1/2): unit mass, C^inf.
static const double XI0 = 2.0 * std::asinh(0.5);

static double bump_raw(double xi) {
    double s = 2.0 * xi / XI0;
    if (s <= -1.0 || s >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - s * s));
}

static double bump_raw_d1(double xi) {
    double s = 2.0 * xi / XI0;
    if (s <= -1.0 || s >= 1.0) return 0.0;
    double om = 1.0 - s * s;
    return bump_raw(xi) * (-(4.0 * s / XI0) / (om * om));
}

static double bump_norm() {
    static double c = 0.0;
    static std::once_flag flag;
    std::call_once(flag, [] {
        double I = gl_composite([](double xi) { return bump_raw(xi); }, -XI0 / 2,
                                XI0 / 2, 64);
        c = 1.0 / I;
    });
    return c;
}

static double g0(double xi) { return bump_norm() * bump_raw(xi); }
static double g0d(double xi) { return bump_norm() * bump_raw_d1(xi); }

double bump_hat(double rho) {
    int panels = 8 + (int)std::ceil(std::abs(rho) * XI0 / 8.0);
    panels = std::min(panels, 2000);
    return 2.0 * gl_composite([&](double xi) { return g0(xi) * std::cos(rho * xi); },
                              0.0, XI0 / 2, panels);
}

cplx bump_hat_complex(cplx rho) {
    int panels = 8 + (int)std::ceil(std::abs(rho) * XI0 / 8.0);
    panels = std::min(panels, 2000);
    return 2.0 * gl_composite_c(
                     [&](double xi) -> cplx {
                         return g0(xi) * std::cos(rho * xi);
                     },
                     0.0, XI0 / 2, panels);
}

// Self-convolution tables G = g0*g0, G' = (g0*g0)' and G'' = g0' * g0',
// shared by every build_test_kernel call.
struct ConvTables {
    double dxi;
    std::vector<double> G, G1, G2;
};

static const ConvTables& conv_tables() {
    static ConvTables ct;
    static std::once_flag flag;
    std::call_once(flag, [] {
        const int n = 4001;
        ct.dxi = XI0 / (n - 1);
        ct.G.resize(n);
        ct.G1.resize(n);
        ct.G2.resize(n);
        for (int i = 0; i < n; ++i) {
            double xi = i * ct.dxi;
            double lo = std::max(-XI0 / 2, xi - XI0 / 2), hi = XI0 / 2;
            if (hi <= lo) {
                ct.G[i] = ct.G1[i] = ct.G2[i] = 0.0;
                continue;
            }
            ct.G[i] = gl_composite(
                [&](double tau) { return g0(tau) * g0(xi - tau); }, lo, hi, 24);
            ct.G1[i] = gl_composite(
                [&](double tau) { return g0(tau) * g0d(xi - tau); }, lo, hi, 24);
            ct.G2[i] = gl_composite(
                [&](double tau) { return g0d(tau) * g0d(xi - tau); }, lo, hi, 24);
        }
    });
    return ct;
}

// GTable for g_T(xi) = G(xi) cos(T xi).
GTable test_kernel_gtable(double T) {
    const ConvTables& ct = conv_tables();
    GTable t;
    t.dxi = ct.dxi;
    t.xi_max = XI0;
    size_t n = ct.G.size();
    t.g.resize(n);
    t.g1.resize(n);
    t.g2.resize(n);
    for (size_t i = 0; i < n; ++i) {
        double xi = i * t.dxi;
        double c = std::cos(T * xi), s = std::sin(T * xi);
        t.g[i] = ct.G[i] * c;
        t.g1[i] = ct.G1[i] * c - T * ct.G[i] * s;
        t.g2[i] = ct.G2[i] * c - 2.0 * T * ct.G1[i] * s - T * T * ct.G[i] * c;
    }
    return t;
}

KernelPair build_test_kernel(double T) {
    if (!(T >= 1.0 && T <= 512.0))
        throw std::domain_error("build_test_kernel: T must lie in [1, 512]");

    KernelPair kp;
    kp.T = T;
    kp.h = [T](double r) {
        double a = bump_hat(r - T), b = bump_hat(r + T);
        return 0.5 * (a * a + b * b);
    };

    // chain through the shared q -> k machinery; list keeps addresses stable
    static std::mutex mu;
    static std::list<std::pair<double, GTable>> gcache;
    GTable* gt = nullptr;
    {
        std::lock_guard<std::mutex> lk(mu);
        for (auto& e : gcache)
            if (e.first == T) gt = &e.second;
        if (!gt) {
            gcache.emplace_back(T, test_kernel_gtable(T));
            gt = &gcache.back().second;
        }
    }

    QFunc qf = selberg_q(*gt);
    KFunc kf = selberg_k(qf, T + 2.0);
    int nodes = std::max(1500, (int)(40.0 * T));
    kp.k = tabulate_kernel(kf, 1.0, nodes);
    kp.u_max = 1.0;
    kp.decay_tail_bound = 0.0;  // compact support by construction
    kp.interp_error = 1e-8 * kp.k.max_abs();

    // property suite
    double hmin_band = 1e300;
    for (int i = 0; i <= 40; ++i) {
        double r = T + i / 40.0;
        hmin_band = std::min(hmin_band, kp.h(r));
    }
    kp.h_min_on_band = hmin_band;
    double hmin_global = 0.0;
    for (int i = 0; i <= 600; ++i) {
        double r = i * (T + 10.0) / 600.0;
        hmin_global = std::min(hmin_global, kp.h(r));
    }
    if (hmin_global < -1e-12)
        throw PropertyError("test kernel: h_T(r) negative on the sampled grid");
    if (hmin_band < 0.3)
        throw PropertyError("test kernel: min h_T on [T, T+1] is " +
                            std::to_string(hmin_band) + " < 0.3");
    kp.c_sup = kp.k.max_abs() / T;
    double c4 = 0.0;
    for (size_t i = 1; i < kp.k.k.size(); ++i) {
        double rho = i * kp.k.drho;
        double u = rho * rho;
        if (u < 1.0 / (T * T)) continue;
        c4 = std::max(c4, std::abs(kp.k.k[i]) * std::sqrt(rho) / std::sqrt(T));
    }
    kp.c_quarter = c4;
    // exact signed value h(i/2) = Re(g0_hat(T + i/2)^2): the constant
    // eigenfunction enters the pre-trace budget only when this is negative
    cplx gh = bump_hat_complex(cplx(T, 0.5));
    kp.h_at_half_i = (gh * gh).real();
    return kp;
}

}  // namespace eislab::kernel
