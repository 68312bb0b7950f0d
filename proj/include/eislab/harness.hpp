#pragma once

// End-to-end assemblies: the geometric side of the amplified pre-trace
// formula, the spectral lower bound, the pre-trace inequality check, the
// integral and Fourier-expansion inequality checks, and the sup-norm scans
// with report emission.

#include "eislab/amplifier.hpp"
#include "eislab/counting.hpp"
#include "eislab/kernel.hpp"
#include "eislab/levelq.hpp"

#include <iosfwd>
#include <optional>
#include <string>

namespace eislab::harness {

using modgroup::UpperHalfPoint;

struct ScanRow {
    double T;
    i64 q;  // 1 for the level-1 scan
    i64 v;  // cusp, v = q means infinity; 1 for level-1
    double x, y;
    double abs_F;
    double envelope;
    double ratio;
};

struct ScanReport {
    std::vector<ScanRow> rows;  // sorted by (q, T, grid index)
    double max_ratio = 0.0;
    std::vector<std::pair<double, double>> max_ratio_by_T;  // (T, max ratio)
    double max_ratio_cusp_infty = 0.0;  // sharpened envelope, v = q rows, y >= 1/q
    std::string grid_spec;
    double error_budget = 0.0;
};

struct GridSpec {
    int ny = 24;  // log-uniform y points
    int nx = 13;  // x points in [-1/2, 1/2]
    double eps = 0.05;
};

struct PretraceReport {
    UpperHalfPoint z;
    double T;
    i64 N;
    double spectral_lhs;
    double geometric_rhs;
    double margin;             // rhs + budget - lhs
    double truncation_budget;  // kernel interpolation + quadrature + h(i/2) term
    bool pass;
};

// Geometric side: sum over ell in {1} cup {p p'} of |y_ell|/sqrt(ell) times
// the exact Stieltjes sum of |k_T| over enumerated matrices with u <= 1.
// z is reduced into D first.
double geometric_side(const UpperHalfPoint& z, double T, i64 N,
                      const kernel::KernelPair& kp, const amplifier::AmplifierSpec& amp,
                      double* budget_out = nullptr);

// Spectral side restricted to |r - T| <= window_r:
// (1/4pi) int h_T(r) |sum_p x_p eta_{ir}(p)|^2 |E(z, 1/2 + i r)|^2 dr.
double spectral_lower(const UpperHalfPoint& z, double T, i64 N,
                      const kernel::KernelPair& kp, const amplifier::AmplifierSpec& amp,
                      double window_r = 6.0, double* quad_err_out = nullptr);

PretraceReport pretrace_check(const UpperHalfPoint& z, double T, i64 N);

// |E(z,1/2+iT)|^2 vs y log^6 T + log^5 T int_{|r|<=4 log T} |E(z,1/2+i(T+r))|^2 dr.
double young_integral_check(const UpperHalfPoint& z, double T);

// |F(z,1/2+it)| vs (t/y)^{1/2} log^2 t + t^{1/6+eps}, eps = 0.05.
double bound_via_fe_check(const UpperHalfPoint& z, double t);

ScanReport supnorm_scan_level1(const std::vector<double>& T_list, const GridSpec& grid);

ScanReport supnorm_scan_levelq(const std::vector<i64>& q_list,
                               const std::vector<double>& T_list, const GridSpec& grid);

// CSV emission: header T,q,v,x,y,abs_F,envelope,ratio; 12 significant digits,
// LF endings.
void write_scan_csv(const ScanReport& rep, std::ostream& os);

// Baseline file support (JSON): pinned fitted constants with a 5% regression
// allowance.
struct Baselines {
    std::map<std::string, double> values;
    static Baselines load(const std::string& path);
    std::optional<double> get(const std::string& key) const;
};

std::string default_baseline_path();

}  // namespace eislab::harness
