#pragma once

// The prime-supported amplifier: coefficients x_p on primes in [N, 2N],
// squared-out weights y_ell, the sums A_N and B_N, the Mellin transform of
// the window, the Ramanujan-identity check, and the lower-bound report.

#include "eislab/numeric.hpp"
#include "eislab/arith.hpp"

#include <functional>
#include <map>
#include <vector>

namespace eislab::amplifier {

struct WindowFunction {
    std::function<double(double)> w;  // supp in [1,2], 0 <= w <= 1
    int smoothness;                   // C^k order hint (-1 = C^inf)
    double operator()(double r) const { return w(r); }
};

struct AmplifierSpec {
    i64 N;
    double t;  // spectral center
    WindowFunction window;
    std::vector<i64> primes;        // primes in [N, 2N]
    std::map<i64, double> x;        // x_p
    std::map<i64, double> y;        // y_1, y_{p^2}, y_{p q}
    double y1() const { return y.at(1); }
};

// w(r) = exp(1 - 1/(1 - (2r-3)^2)) on (1,2), 0 outside; peak value 1 at 3/2.
WindowFunction default_window();

// Mellin transform int_1^2 w(y) y^{s-1} dy, absolute error <= 1e-12.
cplx mellin_w(cplx s, const WindowFunction& w, int refine = 1);

// x_p = w(p/N) log(p) eta_{it}(p); y_1 = sum x_p^2, y_{p^2} = x_p^2,
// y_{p q} = 2 x_p x_q.
AmplifierSpec build_amplifier(i64 N, double t, const WindowFunction& w);

// A_N(t,r) = sum_p w(p/N) log(p) eta_{it}(p) eta_{ir}(p).
double a_sum(i64 N, double t, double r, const WindowFunction& w);

// B_N(t,r) = sum over prime powers p^k in [N,2N] of w(p^k/N) b(p^k), where
// b(p) is the A_N summand and b(p^k)/log p = 2cos(k(t+r)log p)
// + 2cos(k(t-r)log p) - 2 [k even] for k >= 2.
double b_sum(i64 N, double t, double r, const WindowFunction& w);

struct RamanujanCheck {
    cplx lhs;         // truncated Dirichlet series
    cplx rhs;         // zeta quotient
    double gap;       // |lhs - rhs|
    double tail_bound;
};

// sum_n eta_{it}(n) eta_{ir}(n) / n^sigma against
// zeta(s+it+ir) zeta(s-it+ir) zeta(s+it-ir) zeta(s-it-ir) / zeta(2s).
RamanujanCheck ramanujan_check(double t, double r, double sigma, i64 n_max);

struct AmplifierLemmaRow {
    i64 N;
    double a_n, b_n, two_n_mellin, ratio;
};

// Rows (N, A_N, B_N, 2N w~(1), A_N / (2N w~(1))) for t = r = T + offset.
std::vector<AmplifierLemmaRow> verify_amplifier_lemma(const std::vector<i64>& N_list,
                                                      double T, double offset,
                                                      const WindowFunction& w);

}  // namespace eislab::amplifier
