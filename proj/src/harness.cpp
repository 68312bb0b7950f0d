#include "eislab/harness.hpp"

#include "eislab/threads.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>

namespace eislab::harness {

using counting::CountBreakdown;
using counting::enumerate_matrices;
using eisenstein::eisenstein_fourier;
using eisenstein::eta_it;
using eisenstein::KBesselCache;
using eisenstein::scattering_phi;
using eisenstein::SpectralPoint;
using modgroup::point_pair_u_matrix;
using modgroup::reduce_sl2;

// ---------------------------------------------------------------- pre-trace

double geometric_side(const UpperHalfPoint& z_in, double T, i64 N,
                      const kernel::KernelPair& kp, const amplifier::AmplifierSpec& amp,
                      double* budget_out) {
    auto red = reduce_sl2(z_in);
    const UpperHalfPoint z = red.z;

    Kahan total;
    double budget = 0.0;
    i64 matrices_seen = 0;
    // ell runs over the support of y_ell: {1} and the prime pair products
    for (const auto& [ell, yl] : amp.y) {
        if (yl == 0.0) continue;
        CountBreakdown cb = enumerate_matrices({z, ell, kp.u_max}, true);
        Kahan inner;
        for (const auto& g : cb.matrices)
            inner.add(kp.k.at(point_pair_u_matrix(g, z, ell)));
        matrices_seen += (i64)cb.matrices.size();
        total.add(std::abs(yl) / std::sqrt((double)ell) * inner.value());
    }
    budget += kp.interp_error * (double)matrices_seen + kp.decay_tail_bound;
    if (budget_out) *budget_out = budget;
    return total.value();
}

double spectral_lower(const UpperHalfPoint& z_in, double T, i64 N,
                      const kernel::KernelPair& kp, const amplifier::AmplifierSpec& amp,
                      double window_r, double* quad_err_out) {
    auto red = reduce_sl2(z_in);
    const UpperHalfPoint z = red.z;

    auto a_ir = [&](double r) {
        Kahan s;
        for (i64 p : amp.primes) s.add(amp.x.at(p) * eta_it(p, r));
        double v = s.value();
        return v * v;
    };
    KBesselCache cache;
    auto integrand = [&](double r) {
        if (std::abs(r) < 0.05) return 0.0;  // E(z,1/2) = 0; sliver clipped
        auto ev = eisenstein_fourier(z, {0.5, r}, 1e-12, &cache);
        return kp.h(r) * a_ir(r) * std::norm(ev.total) / (4.0 * PI);
    };
    double lo = T - window_r, hi = T + window_r;
    int panels = std::max(48, (int)std::ceil((hi - lo) * 8.0));
    double coarse = gl_composite(integrand, lo, hi, panels, 12);
    double fine = gl_composite(integrand, lo, hi, 2 * panels, 12);
    if (quad_err_out) *quad_err_out = std::abs(fine - coarse);
    return fine;
}

PretraceReport pretrace_check(const UpperHalfPoint& z, double T, i64 N) {
    if (!(T >= 1.0 && T <= 64.0) || N > 101)
        throw std::invalid_argument("pretrace_check: desk scale is T <= 64, N <= 101");
    kernel::KernelPair kp = kernel::build_test_kernel(T);
    amplifier::AmplifierSpec amp =
        amplifier::build_amplifier(N, T, amplifier::default_window());

    double quad_err = 0.0, geo_budget = 0.0;
    double lhs = spectral_lower(z, T, N, kp, amp, 6.0, &quad_err);
    double rhs = geometric_side(z, T, N, kp, amp, &geo_budget);

    // discarded constant-eigenfunction term h(i/2) A_0 |u_0|^2 with
    // lambda_0(p) = (1+p)/sqrt(p) and |u_0|^2 = 3/pi; it costs budget only
    // when h(i/2) < 0
    Kahan a0;
    for (i64 p : amp.primes)
        a0.add(amp.x.at(p) * (1.0 + (double)p) / std::sqrt((double)p));
    double const_term =
        std::max(0.0, -kp.h_at_half_i) * a0.value() * a0.value() * (3.0 / PI);

    double budget = geo_budget + quad_err + const_term;
    PretraceReport rep{z, T, N, lhs, rhs, rhs + budget - lhs, budget,
                       lhs <= rhs + budget};
    return rep;
}

// ------------------------------------------------------------- young / FE

double young_integral_check(const UpperHalfPoint& z, double T) {
    if (!(z.y >= 1.0) || !(T >= 2.0))
        throw std::invalid_argument("young_integral_check: needs y >= 1, T >= 2");
    KBesselCache cache;
    auto e2 = [&](double r) {
        if (std::abs(r) < 0.05) return 0.0;
        auto ev = eisenstein_fourier(z, {0.5, r}, 1e-12, &cache);
        return std::norm(ev.total);
    };
    double W = 4.0 * std::log(T);
    int panels = std::max(64, (int)std::ceil(2.0 * W / 0.25));
    double I = gl_composite([&](double r) { return e2(T + r); }, -W, W, panels, 12);
    double lhs = e2(T);
    double lg = std::log(T);
    double rhs = z.y * std::pow(lg, 6.0) + std::pow(lg, 5.0) * I;
    return lhs / rhs;
}

double bound_via_fe_check(const UpperHalfPoint& z, double t) {
    if (!(z.y >= 1.0) || !(t >= 2.0))
        throw std::invalid_argument("bound_via_fe_check: needs y >= 1, t >= 2");
    auto ev = eisenstein_fourier(z, {0.5, t}, 1e-12);
    double lg = std::log(t);
    double env = std::sqrt(t / z.y) * lg * lg + std::pow(t, 1.0 / 6.0 + 0.05);
    return std::abs(ev.remainder) / env;
}

// ------------------------------------------------------------------- scans

static std::vector<double> log_uniform(double lo, double hi, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i)
        v[i] = std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * i / (n - 1));
    return v;
}

ScanReport supnorm_scan_level1(const std::vector<double>& T_list, const GridSpec& grid) {
    ScanReport rep;
    std::ostringstream gs;
    gs << "level1 ny=" << grid.ny << " nx=" << grid.nx << " y in [T^-3/4, T^3/4]";
    rep.grid_spec = gs.str();

    const i64 nT = (i64)T_list.size();
    rep.rows.resize(nT * grid.ny * grid.nx);
    std::vector<double> budget_rows(nT * grid.ny, 0.0);

#pragma omp parallel for schedule(dynamic, 1)
    for (i64 rj = 0; rj < nT * grid.ny; ++rj) {
        const i64 ti = rj / grid.ny;
        const int j = (int)(rj % grid.ny);
        const double T = T_list[ti];
        std::vector<double> ys =
            log_uniform(std::pow(T, -0.75), std::pow(T, 0.75), grid.ny);
        const double y = ys[j];
        cplx phi = scattering_phi({0.5, T});
        KBesselCache cache;
        double tail_max = 0.0;
        for (int i = 0; i < grid.nx; ++i) {
            double x = -0.5 + (grid.nx == 1 ? 0.5 : (double)i / (grid.nx - 1));
            UpperHalfPoint z{x, y};
            auto red = reduce_sl2(z);
            auto ev = eisenstein_fourier(red.z, {0.5, T}, 1e-12, &cache);
            cplx s(0.5, T);
            cplx F = ev.total - std::exp(s * std::log(y)) -
                     phi * std::exp((1.0 - s) * std::log(y));
            double env = 1.0 / std::sqrt(y) + std::pow(T, 0.375);
            double aF = std::abs(F);
            rep.rows[rj * grid.nx + i] = {T, 1, 1, x, y, aF, env, aF / env};
            tail_max = std::max(tail_max, ev.tail_bound);
        }
        budget_rows[rj] = tail_max;
    }

    for (i64 ti = 0; ti < nT; ++ti) {
        double m = 0.0;
        for (i64 k = ti * grid.ny * grid.nx; k < (ti + 1) * grid.ny * grid.nx; ++k)
            m = std::max(m, rep.rows[k].ratio);
        rep.max_ratio_by_T.push_back({T_list[ti], m});
        rep.max_ratio = std::max(rep.max_ratio, m);
    }
    for (double b : budget_rows) rep.error_budget = std::max(rep.error_budget, b);
    return rep;
}

ScanReport supnorm_scan_levelq(const std::vector<i64>& q_list,
                               const std::vector<double>& T_list, const GridSpec& grid) {
    ScanReport rep;
    std::ostringstream gs;
    gs << "levelq ny=" << grid.ny << " nx=" << grid.nx << " eps=" << grid.eps;
    rep.grid_spec = gs.str();

    struct Cell {
        i64 q, v;
        double T;
    };
    std::vector<Cell> cells;
    for (i64 q : q_list)
        for (const auto& c : levelq::cusps(q))
            for (double T : T_list) cells.push_back({q, c.v, T});

    const i64 ncells = (i64)cells.size();
    rep.rows.resize(ncells * grid.ny * grid.nx);
    std::vector<double> infty_max(ncells, 0.0);
    const double eps = grid.eps;

#pragma omp parallel for schedule(dynamic, 1)
    for (i64 ci = 0; ci < ncells; ++ci) {
        const Cell cell = cells[ci];
        const double T = cell.T;
        levelq::Cusp cusp{cell.q, cell.v, cell.q / cell.v};
        std::vector<double> ys =
            log_uniform(std::pow(T, -0.75), std::pow(T, 0.75), grid.ny);
        KBesselCache cache;
        for (int j = 0; j < grid.ny; ++j) {
            const double y = ys[j];
            for (int i = 0; i < grid.nx; ++i) {
                double x = -0.5 + (grid.nx == 1 ? 0.5 : (double)i / (grid.nx - 1));
                UpperHalfPoint z{x, y};
                auto cv = levelq::eisenstein_cusp(cusp, z, {0.5, T}, 1e-12, &cache);
                double aF = std::abs(cv.remainder);
                double qd = (double)cell.q, vd = (double)cell.v;
                double env = std::pow(qd * vd, -0.5) * std::pow(qd, eps) / std::sqrt(y) +
                             std::pow(qd, -0.5 + eps) * std::pow(T, 0.375 + eps);
                rep.rows[(ci * grid.ny + j) * grid.nx + i] = {T, cell.q, cell.v, x, y,
                                                              aF, env, aF / env};
                if (cusp.is_infinity() && y >= 1.0 / qd) {
                    double envB = std::pow(qd, -0.5 + eps) * std::pow(T, 0.375 + eps);
                    infty_max[ci] = std::max(infty_max[ci], aF / envB);
                }
            }
        }
    }

    for (const auto& r : rep.rows) rep.max_ratio = std::max(rep.max_ratio, r.ratio);
    std::map<double, double> byT;
    for (const auto& r : rep.rows) byT[r.T] = std::max(byT[r.T], r.ratio);
    for (auto [t, m] : byT) rep.max_ratio_by_T.push_back({t, m});
    for (double m : infty_max)
        rep.max_ratio_cusp_infty = std::max(rep.max_ratio_cusp_infty, m);
    return rep;
}

void write_scan_csv(const ScanReport& rep, std::ostream& os) {
    os << "T,q,v,x,y,abs_F,envelope,ratio\n";
    char buf[256];
    for (const auto& r : rep.rows) {
        std::snprintf(buf, sizeof buf, "%.12g,%lld,%lld,%.12g,%.12g,%.12g,%.12g,%.12g\n",
                      r.T, (long long)r.q, (long long)r.v, r.x, r.y, r.abs_F, r.envelope,
                      r.ratio);
        os << buf;
    }
}

Baselines Baselines::load(const std::string& path) {
    Baselines b;
    std::ifstream in(path);
    if (!in) return b;
    nlohmann::json j;
    in >> j;
    for (auto it = j.begin(); it != j.end(); ++it)
        if (it->is_number()) b.values[it.key()] = it->get<double>();
    return b;
}

std::optional<double> Baselines::get(const std::string& key) const {
    auto it = values.find(key);
    if (it == values.end()) return std::nullopt;
    return it->second;
}

std::string default_baseline_path() {
    if (const char* p = std::getenv("EISLAB_BASELINES")) return p;
#ifdef EISLAB_BASELINE_DIR
    return std::string(EISLAB_BASELINE_DIR) + "/baselines.json";
#else
    return "baselines/baselines.json";
#endif
}

}  // namespace eislab::harness
