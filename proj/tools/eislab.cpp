// eislab command line: single evaluations, scans, lattice counts, amplifier
// reports, the pre-trace inequality check, kernel construction, and the full
// acceptance battery.

#include "eislab/harness.hpp"
#include "eislab/selftest.hpp"
#include "eislab/threads.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

using namespace eislab;
using nlohmann::json;

static const char* kVersion = "0.1.0";

static std::vector<double> parse_list_d(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
    return out;
}

static std::vector<i64> parse_list_i(const std::string& s) {
    std::vector<i64> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stoll(tok));
    return out;
}

// TOML-shaped key/value config: lines of `key = value`, # comments
static std::map<std::string, std::string> read_config(const std::string& path) {
    std::map<std::string, std::string> kv;
    std::ifstream in(path);
    std::string line;
    auto trim = [](std::string s) {
        size_t a = s.find_first_not_of(" \t\"");
        size_t b = s.find_last_not_of(" \t\"\r");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos) continue;
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return kv;
}

static json version_block() {
    return json{{"eislab", kVersion}};
}

int main(int argc, char** argv) {
    apply_thread_env();

    CLI::App app{"eislab: Eisenstein series numerical laboratory"};
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path, "TOML-shaped key=value config file");

    // ---------------------------------------------------------------- eval
    auto* eval = app.add_subcommand("eval", "evaluate E(z,s) or E_a(z,s)");
    i64 ev_q = 1, ev_v = -1;
    double ev_x = 0.0, ev_y = 1.0, ev_T = 10.0, ev_sigma = 0.5;
    bool ev_json = false;
    eval->add_option("--q", ev_q, "level (square-free)");
    eval->add_option("--cusp-v", ev_v, "cusp divisor v | q (default: q, the infinity cusp)");
    eval->add_option("--x", ev_x, "Re z");
    eval->add_option("--y", ev_y, "Im z")->required();
    eval->add_option("--T", ev_T, "spectral parameter Im s");
    eval->add_option("--sigma", ev_sigma, "Re s (1/2, or >= 2 for the lattice oracle)");
    eval->add_flag("--json", ev_json, "JSON output");

    // ---------------------------------------------------------------- scan
    auto* scan = app.add_subcommand("scan", "sup-norm scan with CSV report");
    bool sc_level1 = false;
    std::string sc_q = "", sc_T = "16,32,64,128", sc_grid = "24x13", sc_out = "";
    scan->add_flag("--level1", sc_level1, "level-1 scan");
    scan->add_option("--q", sc_q, "comma list of square-free levels");
    scan->add_option("--T", sc_T, "comma list of spectral parameters");
    scan->add_option("--grid", sc_grid, "grid spec NYxNX (default 24x13)");
    scan->add_option("--out", sc_out, "output CSV path (default stdout)");

    // --------------------------------------------------------------- count
    auto* count = app.add_subcommand("count", "lattice-point count at (z, ell, delta)");
    double ct_x = 0.0, ct_y = 1.0, ct_delta = 0.5;
    i64 ct_ell = 1;
    bool ct_fast = false, ct_list = false;
    count->add_option("--x", ct_x);
    count->add_option("--y", ct_y)->required();
    count->add_option("--ell", ct_ell)->required();
    count->add_option("--delta", ct_delta)->required();
    count->add_flag("--fast-parabolic", ct_fast, "constructive parabolic count only");
    count->add_flag("--list", ct_list, "print the matrices");

    // ----------------------------------------------------------- amplifier
    auto* ampc = app.add_subcommand("amplifier", "amplifier lower-bound report");
    std::string am_N = "1000,10000,100000";
    double am_T = 50.0, am_offset = 0.0;
    ampc->add_option("--N", am_N, "comma list of N");
    ampc->add_option("--T", am_T, "spectral center");
    ampc->add_option("--offset", am_offset, "t - r offset");

    // ------------------------------------------------------------ pretrace
    auto* pre = app.add_subcommand("pretrace", "amplified pre-trace inequality check");
    double pr_x = 0.0, pr_y = 1.0, pr_T = 10.0;
    i64 pr_N = 11;
    pre->add_option("--x", pr_x);
    pre->add_option("--y", pr_y)->required();
    pre->add_option("--T", pr_T)->required();
    pre->add_option("--N", pr_N)->required();

    // -------------------------------------------------------------- kernel
    auto* ker = app.add_subcommand("kernel", "build the localized test kernel");
    double ke_T = 16.0;
    bool ke_selftest = false;
    ker->add_option("--T", ke_T)->required();
    ker->add_flag("--selftest", ke_selftest, "run the kernel property suite");

    // ------------------------------------------------------------ selftest
    auto* self = app.add_subcommand("selftest", "run the full acceptance battery");
    std::string write_baselines;
    self->add_option("--write-baselines", write_baselines,
                     "write measured fitted constants to this JSON file");

    CLI11_PARSE(app, argc, argv);

    if (!config_path.empty()) {
        auto kv = read_config(config_path);
        if (kv.count("baselines")) setenv("EISLAB_BASELINES", kv["baselines"].c_str(), 1);
        if (kv.count("grid")) sc_grid = kv["grid"];
    }

    try {
        if (*eval) {
            modgroup::UpperHalfPoint z{ev_x, ev_y};
            eisenstein::SpectralPoint s{ev_sigma, ev_T};
            json out;
            out["inputs"] = {{"q", ev_q}, {"x", ev_x}, {"y", ev_y},
                             {"sigma", ev_sigma}, {"T", ev_T}};
            double tail = 0.0;
            cplx total, remainder;
            if (ev_q == 1) {
                if (ev_sigma >= 2.0 && ev_T != 0.0) {
                    total = eisenstein::eisenstein_lattice(z, s);
                    remainder = cplx(0, 0);
                    out["outputs"]["note"] = "lattice-sum path; remainder not split";
                } else {
                    auto ev = eisenstein::eisenstein_fourier(z, s);
                    total = ev.total;
                    remainder = ev.remainder;
                    tail = ev.tail_bound;
                }
            } else {
                if (ev_v < 0) ev_v = ev_q;
                levelq::Cusp c{ev_q, ev_v, ev_q / ev_v};
                auto cv = levelq::eisenstein_cusp(c, z, s);
                total = cv.total;
                remainder = cv.remainder;
                tail = cv.tail_bound;
                out["inputs"]["cusp_v"] = ev_v;
            }
            out["outputs"]["re"] = total.real();
            out["outputs"]["im"] = total.imag();
            out["outputs"]["abs"] = std::abs(total);
            out["outputs"]["remainder_re"] = remainder.real();
            out["outputs"]["remainder_im"] = remainder.imag();
            out["error_budget"] = {{"bessel_tail", tail}};
            out["versions"] = version_block();
            if (ev_json) {
                std::cout << out.dump(2) << "\n";
            } else {
                std::printf("E = %.12g + %.12gi  |E| = %.12g\n", total.real(),
                            total.imag(), std::abs(total));
                std::printf("F = %.12g + %.12gi  |F| = %.12g (tail <= %.3g)\n",
                            remainder.real(), remainder.imag(), std::abs(remainder), tail);
            }
        } else if (*scan) {
            harness::GridSpec grid;
            if (sscanf(sc_grid.c_str(), "%dx%d", &grid.ny, &grid.nx) != 2)
                throw std::invalid_argument("--grid must look like 24x13");
            harness::ScanReport rep;
            if (sc_level1 || sc_q.empty())
                rep = harness::supnorm_scan_level1(parse_list_d(sc_T), grid);
            else
                rep = harness::supnorm_scan_levelq(parse_list_i(sc_q), parse_list_d(sc_T),
                                                   grid);
            if (sc_out.empty()) {
                harness::write_scan_csv(rep, std::cout);
            } else {
                std::ofstream f(sc_out, std::ios::binary);
                harness::write_scan_csv(rep, f);
            }
            std::cerr << "max_ratio = " << rep.max_ratio
                      << "  grid = " << rep.grid_spec
                      << "  bessel_tail <= " << rep.error_budget << "\n";
        } else if (*count) {
            counting::CountQuery q{{ct_x, ct_y}, ct_ell, ct_delta};
            counting::CountBreakdown cb =
                ct_fast ? counting::parabolic_fast(q) : counting::enumerate_matrices(q);
            std::printf("M* = %lld  M_u = %lld  M_p = %lld  total = %lld\n",
                        (long long)cb.m_star, (long long)cb.m_u, (long long)cb.m_p,
                        (long long)cb.total());
            if (ct_list)
                for (const auto& g : cb.matrices)
                    std::printf("[%lld %lld; %lld %lld]  u = %.6g\n", (long long)g.a,
                                (long long)g.b, (long long)g.c, (long long)g.d,
                                modgroup::point_pair_u_matrix(g, {ct_x, ct_y}, ct_ell));
        } else if (*ampc) {
            auto rows = amplifier::verify_amplifier_lemma(
                parse_list_i(am_N), am_T, am_offset, amplifier::default_window());
            std::printf("%10s %16s %16s %16s %10s\n", "N", "A_N", "B_N", "2N*mellin(1)",
                        "ratio");
            for (const auto& r : rows)
                std::printf("%10lld %16.6f %16.6f %16.6f %10.6f\n", (long long)r.N, r.a_n,
                            r.b_n, r.two_n_mellin, r.ratio);
        } else if (*pre) {
            auto rep = harness::pretrace_check({pr_x, pr_y}, pr_T, pr_N);
            std::printf("spectral_lhs = %.8g\ngeometric_rhs = %.8g\nbudget = %.3g\n"
                        "margin = %.8g\n%s\n",
                        rep.spectral_lhs, rep.geometric_rhs, rep.truncation_budget,
                        rep.margin, rep.pass ? "PASS (lhs <= rhs + budget)" : "FAIL");
            return rep.pass ? 0 : 1;
        } else if (*ker) {
            auto kp = kernel::build_test_kernel(ke_T);
            std::printf("T = %g\nu_max = %g\nmax|k| = %.6g (C_sup = %.4f)\n"
                        "min h on [T,T+1] = %.4f\nC_quarter = %.4f\n|h(i/2)| <= %.3g\n",
                        kp.T, kp.u_max, kp.k.max_abs(), kp.c_sup, kp.h_min_on_band,
                        kp.c_quarter, kp.h_at_half_i);
            if (ke_selftest) {
                auto [hv, resid] = kernel::spherical_forward(
                    [&](double u) { return kp.k.at(u); }, kp.u_max, ke_T, 2);
                std::printf("forward(k)(T) = %.6g vs h(T) = %.6g\n", hv, kp.h(ke_T));
            }
        } else if (*self) {
            int failures = selftest::run_acceptance(std::cout, write_baselines);
            return failures == 0 ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
