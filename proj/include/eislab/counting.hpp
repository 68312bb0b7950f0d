#pragma once

// Enumeration and classification of integer matrices with det = ell and
// u(gz, z) <= delta: exhaustive enumeration over provably safe ranges, the
// brute-force oracle, the constructive parabolic count, and the ratio
// reports for the three counting lemmas.

#include "eislab/modgroup.hpp"

#include <functional>

namespace eislab::counting {

using modgroup::IntegerMatrix2;
using modgroup::UpperHalfPoint;

enum class MatrixClass { generic, upper, parabolic };

struct CountQuery {
    UpperHalfPoint z;
    i64 ell;
    double delta;  // in (0, 1] for lemma checks; kernel support may push to 1
};

struct CountBreakdown {
    i64 m_star = 0, m_u = 0, m_p = 0;
    std::vector<IntegerMatrix2> matrices;  // lexicographic (a, b, c, d)
    i64 total() const { return m_star + m_u + m_p; }
};

// generic: c != 0 and (a+d)^2 != 4 ell; upper: c = 0 and a != d;
// parabolic: (a+d)^2 = 4 ell. Throws on det mismatch.
MatrixClass classify(const IntegerMatrix2& g, i64 ell);

// Exhaustive enumeration of {det = ell, u(gz,z) <= delta}. Candidate ranges
// carry a relative safety margin; every candidate is re-checked with the
// exact u formula. Throws if the predicted candidate count exceeds 1e8.
CountBreakdown enumerate_matrices(const CountQuery& q, bool keep_matrices = true);

// Quadruple-loop oracle over |a|,|b|,|c|,|d| <= bound; test-grade reference.
CountBreakdown brute_force_enumerate(const CountQuery& q);

// Parabolic class only, ell = m^2, by the constructive trace/discriminant
// walk (c = 0 branch and c != 0 branch with (a-d)^2 + 4bc = 0).
CountBreakdown parabolic_fast(const CountQuery& q);

struct LemmaReport {
    double sup_ratio = 0.0;
    struct Row {
        double L, delta, value, bound, ratio;
    };
    std::vector<Row> rows;
};

// sum_{ell <= L} M_*(z, ell, delta) against L^eps (L/y + L^{3/2} delta^{1/2}
// + L^2 delta), eps = 0.1.
LemmaReport check_lemma_generic(const UpperHalfPoint& z, const std::vector<i64>& L_list,
                                const std::vector<double>& delta_list);

// sum over prime pairs ell_1, ell_2 <= L of M_u(z, ell_1 ell_2, delta)
// against L^eps (L + L^3 delta^{1/2} y).
LemmaReport check_lemma_upper(const UpperHalfPoint& z, const std::vector<i64>& L_list,
                              const std::vector<double>& delta_list);

// Exact Stieltjes sum over enumerated matrices of |k(u(gz,z))| for u <= 1.
double stieltjes_weighted_count(const UpperHalfPoint& z, i64 ell,
                                const std::function<double(double)>& abs_k);

}  // namespace eislab::counting
