#include "eislab/selftest.hpp"

#include "eislab/harness.hpp"
#include "eislab/threads.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>

namespace eislab::selftest {

using namespace eislab;
using counting::brute_force_enumerate;
using counting::CountBreakdown;
using counting::CountQuery;
using counting::enumerate_matrices;
using counting::parabolic_fast;
using eisenstein::eisenstein_fourier;
using eisenstein::eisenstein_lattice;
using eisenstein::eta_it;
using eisenstein::scattering_phi;
using eisenstein::SpectralPoint;
using modgroup::IntegerMatrix2;
using modgroup::UpperHalfPoint;

namespace {

struct Runner {
    std::ostream& out;
    harness::Baselines base;
    nlohmann::json measured;
    bool writing;
    int failures = 0;

    void report(const std::string& id, bool pass, const std::string& detail) {
        char line[512];
        std::snprintf(line, sizeof line, "%s %s %s\n", id.c_str(),
                      pass ? "PASS" : "FAIL", detail.c_str());
        out << line;
        if (!pass) ++failures;
    }

    // fitted-constant comparison with the 5% regression allowance
    bool pinned(const std::string& key, double value) {
        measured[key] = value;
        if (writing) return true;
        auto b = base.get(key);
        if (!b) return false;
        return value <= *b * 1.05;
    }
};

double urand(std::mt19937_64& rng) {
    return std::ldexp((double)(rng() >> 11), -53);
}

UpperHalfPoint random_in_D(std::mt19937_64& rng) {
    for (;;) {
        double x = urand(rng) - 0.5;
        double y = 0.87 + 2.0 * urand(rng);
        if (x * x + y * y >= 1.0) return {x, y};
    }
}

IntegerMatrix2 random_sl2(std::mt19937_64& rng, int len = 6) {
    IntegerMatrix2 m = IntegerMatrix2::identity();
    const IntegerMatrix2 S{0, -1, 1, 0};
    for (int i = 0; i < len; ++i) {
        if (rng() & 1) {
            m = m.mul(S);
        } else {
            i64 k = (i64)(rng() % 5) - 2;
            m = m.mul(IntegerMatrix2{1, k, 0, 1});
        }
    }
    return m;
}

// Power-series oracle for K_0: independent of the quadrature path.
double k0_series(double x) {
    const double euler = 0.57721566490153286060651209008240243;
    double q = x * x / 4.0;
    double i0 = 1.0, sum = 0.0, term = 1.0, h = 0.0;
    for (int k = 1; k <= 60; ++k) {
        term *= q / (k * (double)k);
        i0 += term;
        h += 1.0 / k;
        sum += term * h;
    }
    return -(std::log(x / 2.0) + euler) * i0 + sum;
}

void c1_oracle_level1(Runner& r) {
    std::mt19937_64 rng(101);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        UpperHalfPoint z = random_in_D(rng);
        for (double sig : {2.0, 3.0}) {
            cplx lat = eisenstein_lattice(z, {sig, 0.0});
            cplx fou = eisenstein_fourier(z, {sig, 0.0}).total;
            worst = std::max(worst, std::abs(lat - fou) / std::abs(lat));
        }
    }
    char d[160];
    std::snprintf(d, sizeof d, "level-1 Fourier vs lattice at s=2,3: max_rel=%.3e", worst);
    r.report("c01", worst <= 1e-8, d);
}

void c2_automorphy(Runner& r) {
    std::mt19937_64 rng(202);
    double worst = 0.0;
    for (double T : {5.0, 30.0, 100.0}) {
        for (int i = 0; i < 17; ++i) {
            double x = urand(rng) - 0.5, y = 0.5 + 1.5 * urand(rng);
            UpperHalfPoint z{x, y};
            IntegerMatrix2 g = random_sl2(rng);
            UpperHalfPoint gz = modgroup::apply(g, z);
            cplx e1 = eisenstein_fourier(z, {0.5, T}).total;
            cplx e2 = eisenstein_fourier(gz, {0.5, T}).total;
            worst = std::max(worst, std::abs(e1 - e2) / std::abs(e1));
        }
    }
    char d[160];
    std::snprintf(d, sizeof d, "automorphy over 51 (gamma,z), T in {5,30,100}: max_rel=%.3e",
                  worst);
    r.report("c02", worst <= 1e-6, d);
}

void c3_unitarity(Runner& r) {
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        double T = std::exp(std::log(1.0) + (std::log(512.0) - std::log(1.0)) * i / 49.0);
        double m = std::abs(scattering_phi({0.5, T}));
        worst = std::max(worst, std::abs(m - 1.0));
    }
    char d[160];
    std::snprintf(d, sizeof d, "|phi(1/2+iT)|=1 on 50 log-spaced T in [1,512]: max_dev=%.3e",
                  worst);
    r.report("c03", worst <= 1e-10, d);
}

void c4_hecke(Runner& r) {
    double worst = 0.0;
    for (double t : {0.7, 13.3, 97.1}) {
        std::vector<double> eta(200 * 200 + 1);
        for (i64 n = 1; n <= 200 * 200; ++n) eta[n] = 0.0;
        // direct multiplicative values up to 4e4
        for (i64 n = 1; n <= 200 * 200; ++n) eta[n] = eta_it(n, t);
        for (i64 m = 1; m <= 200; ++m) {
            for (i64 n = m; n <= 200; ++n) {
                double lhs = eta[m] * eta[n];
                double rhs = 0.0;
                i64 g = std::gcd(m, n);
                for (i64 dd : divisors(g)) rhs += eta[m * n / (dd * dd)];
                worst = std::max(worst, std::abs(lhs - rhs));
            }
        }
    }
    char d[160];
    std::snprintf(d, sizeof d, "Hecke relation m,n<=200, three t: max_abs_dev=%.3e", worst);
    r.report("c04", worst <= 1e-12, d);
}

void c5_bessel(Runner& r) {
    double worst0 = 0.0;
    for (double u : {0.1, 1.0, 10.0}) {
        double got = specfun::bessel_k_scaled(0.0, u).value;
        worst0 = std::max(worst0, std::abs(got - k0_series(u)));
    }
    bool ok = worst0 <= 1e-9;
    std::string detail = "K0 series dev=" + std::to_string(worst0);
    char buf[64];
    std::snprintf(buf, sizeof buf, "K0 series max_dev=%.3e", worst0);
    detail = buf;
    for (double t : {50.0, 100.0, 200.0}) {
        double tc = std::cbrt(t);
        double c1 = 0.0, c2 = 0.0;
        for (int i = 0; i <= 40; ++i) {  // oscillatory regime u < t - 3 t^{1/3}
            double u = 0.2 * t + (t - 3.0 * tc - 0.2 * t) * i / 40.0;
            double s = specfun::bessel_k_scaled(t, u).value;
            c1 = std::max(c1, std::abs(s) * std::pow(t, 0.25) * std::pow(t - u, 0.25));
        }
        for (int i = 0; i <= 40; ++i) {  // transition |u-t| <= 3 t^{1/3}
            double u = t - 3.0 * tc + 6.0 * tc * i / 40.0;
            double s = specfun::bessel_k_scaled(t, u).value;
            c2 = std::max(c2, std::abs(s) * std::pow(t, 1.0 / 3.0));
        }
        double s3 = std::abs(specfun::bessel_k_scaled(t, t + 12.0 * tc).value);
        char key[64];
        std::snprintf(key, sizeof key, "kbessel_c1_t%d", (int)t);
        ok = r.pinned(key, c1) && ok;
        std::snprintf(key, sizeof key, "kbessel_c2_t%d", (int)t);
        ok = r.pinned(key, c2) && ok;
        ok = ok && (s3 <= 1e-6);  // super-polynomial decay past the bulge
        std::snprintf(buf, sizeof buf, " t=%g: C1=%.3f C2=%.3f decay=%.1e", t, c1, c2, s3);
        detail += buf;
    }
    r.report("c05", ok, detail);
}

void c6_levelq(Runner& r) {
    std::mt19937_64 rng(606);
    double worst_oracle = 0.0, worst_fricke = 0.0, worst_delta = 0.0;
    for (i64 q : {2, 3, 5, 6, 7, 10}) {
        for (const auto& cusp : levelq::cusps(q)) {
            // oracle match at s = 2
            for (int i = 0; i < 2; ++i) {
                UpperHalfPoint z = random_in_D(rng);
                cplx direct = levelq::eisenstein_cusp_direct(cusp, z, {2.0, 0.0});
                cplx comb = levelq::eisenstein_cusp(cusp, z, {2.0, 0.0}).total;
                worst_oracle =
                    std::max(worst_oracle, std::abs(direct - comb) / std::abs(direct));
            }
            // Fricke relation at s = 1/2 + 20i
            UpperHalfPoint z = random_in_D(rng);
            SpectralPoint s{0.5, 20.0};
            cplx lhs = levelq::eisenstein_cusp(cusp, modgroup::fricke(q, z), s).total;
            cplx rhs = levelq::eisenstein_cusp(cusp.dual(), z, s).total;
            worst_fricke = std::max(worst_fricke, std::abs(lhs - rhs) / std::abs(rhs));
            // delta_a identity
            cplx dc = levelq::delta_coefficient(cusp, cplx(2.0, 0.0));
            cplx dc2 = levelq::delta_coefficient(cusp, cplx(0.5, 20.0));
            double want = cusp.is_infinity() ? 1.0 : 0.0;
            worst_delta = std::max({worst_delta, std::abs(dc - want), std::abs(dc2 - want)});
        }
    }
    char d[200];
    std::snprintf(d, sizeof d,
                  "level-q: oracle_rel=%.3e fricke_rel=%.3e delta_dev=%.3e", worst_oracle,
                  worst_fricke, worst_delta);
    r.report("c06", worst_oracle <= 1e-8 && worst_fricke <= 1e-6 && worst_delta <= 1e-12,
             d);
}

void c7_amplifier(Runner& r) {
    auto w = amplifier::default_window();
    double T = 50.0;
    std::vector<i64> Ns{1000, 10000, 100000};
    auto rows = amplifier::verify_amplifier_lemma(Ns, T, 0.0, w);
    bool ok = true;
    double cfit = 0.0;
    std::string detail = "amplifier:";
    double prev_dev = 1e300;
    for (const auto& row : rows) {
        double dev = std::abs(row.a_n - row.b_n) /
                     (std::sqrt((double)row.N) * std::log((double)row.N));
        cfit = std::max(cfit, dev);
        double rd = std::abs(row.ratio - 1.0);
        ok = ok && (rd < prev_dev);  // |ratio - 1| strictly decreasing
        prev_dev = rd;
        char buf[120];
        std::snprintf(buf, sizeof buf, " N=%lld ratio=%.4f", (long long)row.N, row.ratio);
        detail += buf;
    }
    ok = ok && std::abs(rows.back().ratio - 1.0) <= 0.1;
    ok = r.pinned("amplifier_c_anbn", cfit) && ok;
    char buf[80];
    std::snprintf(buf, sizeof buf, " C_AB=%.4f", cfit);
    detail += buf;
    r.report("c07", ok, detail);
}

void c8_counting(Runner& r) {
    std::mt19937_64 rng(808);
    bool ok = true;
    std::string detail = "counting:";
    // parabolic_fast vs brute force, 100 random queries
    int mism = 0;
    for (int i = 0; i < 100; ++i) {
        UpperHalfPoint z = random_in_D(rng);
        i64 m = 1 + (i64)(rng() % 20);
        double delta = 0.02 + 0.97 * urand(rng);
        CountQuery q{z, m * m, delta};
        CountBreakdown fast = parabolic_fast(q);
        CountBreakdown brute = brute_force_enumerate(q);
        std::vector<IntegerMatrix2> bp;
        for (const auto& g : brute.matrices)
            if (counting::classify(g, q.ell) == counting::MatrixClass::parabolic)
                bp.push_back(g);
        if (bp.size() != fast.matrices.size() ||
            !std::equal(bp.begin(), bp.end(), fast.matrices.begin()))
            ++mism;
    }
    ok = ok && mism == 0;
    char buf[200];
    std::snprintf(buf, sizeof buf, " parabolic_mismatch=%d", mism);
    detail += buf;
    // M_u(z, 1, delta) = 0 and M_p = 0 for non-squares
    i64 bad_u = 0, bad_p = 0;
    for (int i = 0; i < 40; ++i) {
        UpperHalfPoint z = random_in_D(rng);
        double delta = 0.02 + 0.97 * urand(rng);
        bad_u += enumerate_matrices({z, 1, delta}, false).m_u;
        i64 ell = 2 + (i64)(rng() % 120);
        if (!is_perfect_square(ell)) bad_p += enumerate_matrices({z, ell, delta}, false).m_p;
    }
    ok = ok && bad_u == 0 && bad_p == 0;
    std::snprintf(buf, sizeof buf, " M_u(1)=%lld M_p(nonsq)=%lld", (long long)bad_u,
                  (long long)bad_p);
    detail += buf;
    // lemma ratio suprema, regression-pinned
    std::vector<i64> Ls{10, 30, 100};
    std::vector<double> deltas{1e-4, 1e-2, 0.5};
    double supg = 0.0, supu = 0.0;
    for (UpperHalfPoint z : {UpperHalfPoint{0, 1}, {0, 2}, {0.4, 0.9}}) {
        supg = std::max(supg, counting::check_lemma_generic(z, Ls, deltas).sup_ratio);
        supu = std::max(supu, counting::check_lemma_upper(z, Ls, deltas).sup_ratio);
    }
    ok = r.pinned("counting_sup_generic", supg) && ok;
    ok = r.pinned("counting_sup_upper", supu) && ok;
    std::snprintf(buf, sizeof buf, " sup_generic=%.4f sup_upper=%.4f", supg, supu);
    detail += buf;
    r.report("c08", ok, detail);
}

void c9_kernel(Runner& r) {
    bool ok = true;
    std::string detail = "kernel:";
    char buf[160];
    // Gaussian round trip, h = e^{-(r/T)^2}, T in {5, 20}
    for (double Tg : {5.0, 20.0}) {
        auto h = [Tg](double rr) { return std::exp(-(rr / Tg) * (rr / Tg)); };
        double rmax = 6.5 * Tg;
        double ximax = 13.0 / Tg;
        kernel::GTable g = kernel::selberg_g(h, rmax, ximax, 3001);
        kernel::QFunc q = kernel::selberg_q(g);
        kernel::KFunc k = kernel::selberg_k(q, 1.0);
        double umax = 4.0 * std::sinh(ximax / 2.0) * std::sinh(ximax / 2.0);
        kernel::KernelTable kt = kernel::tabulate_kernel(k, umax, 6001);
        double worst = 0.0;
        for (int i = 0; i <= 20; ++i) {
            double rr = 2.0 * Tg * i / 20.0;
            auto [hv, resid] = kernel::spherical_forward(
                [&](double u) { return kt.at(u); }, umax, rr, 2);
            worst = std::max(worst, std::abs(hv - h(rr)) / h(rr));
        }
        ok = ok && worst <= 1e-4;
        std::snprintf(buf, sizeof buf, " roundtrip_T%g=%.2e", Tg, worst);
        detail += buf;
    }
    // Lemma-style property suite at T in {16, 64, 256}
    for (double T : {16.0, 64.0, 256.0}) {
        kernel::KernelPair kp = kernel::build_test_kernel(T);
        ok = ok && kp.h_min_on_band >= 0.3;
        char key[64];
        std::snprintf(key, sizeof key, "kernel_c_sup_T%d", (int)T);
        ok = r.pinned(key, kp.c_sup) && ok;
        std::snprintf(key, sizeof key, "kernel_c_quarter_T%d", (int)T);
        ok = r.pinned(key, kp.c_quarter) && ok;
        std::snprintf(buf, sizeof buf, " T=%g: hband=%.3f Csup=%.3f C4=%.3f", T,
                      kp.h_min_on_band, kp.c_sup, kp.c_quarter);
        detail += buf;
    }
    r.report("c09", ok, detail);
}

void c10_pretrace(Runner& r) {
    bool ok = true;
    std::string detail = "pretrace:";
    std::vector<std::pair<double, i64>> tn{{10.0, 11}, {20.0, 29}};
    for (UpperHalfPoint z : {UpperHalfPoint{0, 1}, {0, 2}, {0.3, 0.8}}) {
        for (auto [T, N] : tn) {
            auto rep = harness::pretrace_check(z, T, N);
            ok = ok && rep.pass;
            char buf[160];
            std::snprintf(buf, sizeof buf, " (%.1f+%.1fi,T=%g,N=%lld): lhs=%.4g rhs=%.4g",
                          z.x, z.y, T, (long long)N, rep.spectral_lhs, rep.geometric_rhs);
            detail += buf;
        }
    }
    r.report("c10", ok, detail);
}

void c11_scans(Runner& r) {
    bool ok = true;
    std::string detail = "scans:";
    char buf[160];
    harness::GridSpec grid;
    auto rep1 = harness::supnorm_scan_level1({16, 32, 64, 128}, grid);
    ok = ok && std::isfinite(rep1.max_ratio);
    ok = r.pinned("scan1_max_ratio", rep1.max_ratio) && ok;
    double growth_bound = std::pow(2.0, 0.1);
    for (size_t i = 1; i < rep1.max_ratio_by_T.size(); ++i) {
        double g = rep1.max_ratio_by_T[i].second / rep1.max_ratio_by_T[i - 1].second;
        ok = ok && (g < growth_bound);
        std::snprintf(buf, sizeof buf, " growth_%g=%.4f", rep1.max_ratio_by_T[i].first, g);
        detail += buf;
    }
    std::snprintf(buf, sizeof buf, " level1_max=%.4f", rep1.max_ratio);
    detail += buf;

    auto repq = harness::supnorm_scan_levelq({2, 3, 5, 6, 7, 10}, {16, 64, 128}, grid);
    ok = ok && std::isfinite(repq.max_ratio);
    ok = r.pinned("scanq_max_ratio", repq.max_ratio) && ok;
    ok = r.pinned("scanq_max_ratio_infty", repq.max_ratio_cusp_infty) && ok;
    std::snprintf(buf, sizeof buf, " levelq_max=%.4f levelq_infty=%.4f", repq.max_ratio,
                  repq.max_ratio_cusp_infty);
    detail += buf;
    r.report("c11", ok, detail);
}

void c12_determinism(Runner& r) {
    harness::GridSpec grid;
    grid.ny = 8;
    grid.nx = 5;
    auto run = [&](int threads) {
        set_threads(threads);
        auto rep = harness::supnorm_scan_level1({16, 32}, grid);
        auto repq = harness::supnorm_scan_levelq({6}, {16}, grid);
        std::ostringstream os;
        harness::write_scan_csv(rep, os);
        harness::write_scan_csv(repq, os);
        return os.str();
    };
    std::string a = run(1);
    std::string b = run(4);
    apply_thread_env();
    bool ok = (a == b);
    char buf[120];
    std::snprintf(buf, sizeof buf, "byte-identical reports at 1 vs 4 threads: %s",
                  ok ? "identical" : "DIFFER");
    r.report("c12", ok, buf);
}

}  // namespace

int run_acceptance(std::ostream& out, const std::string& write_baselines) {
    Runner r{out, harness::Baselines::load(harness::default_baseline_path()),
             nlohmann::json::object(), !write_baselines.empty()};
    c1_oracle_level1(r);
    c2_automorphy(r);
    c3_unitarity(r);
    c4_hecke(r);
    c5_bessel(r);
    c6_levelq(r);
    c7_amplifier(r);
    c8_counting(r);
    c9_kernel(r);
    c10_pretrace(r);
    c11_scans(r);
    c12_determinism(r);
    if (!write_baselines.empty()) {
        std::ofstream f(write_baselines);
        f << r.measured.dump(2) << "\n";
        out << "baselines written to " << write_baselines << "\n";
    }
    return r.failures;
}

}  // namespace eislab::selftest
