#pragma once

// Integer matrix actions on the upper half-plane, reduction to the SL2(Z)
// fundamental domain D and to the Atkin-Lehner domain F(q), the point-pair
// invariant u(z,w), and the Fricke map.

#include "eislab/arith.hpp"

#include <string>
#include <vector>

namespace eislab::modgroup {

struct UpperHalfPoint {
    double x;
    double y;  // > 0
};

struct IntegerMatrix2 {
    i64 a, b, c, d;
    i64 det() const { return a * d - b * c; }
    IntegerMatrix2 mul(const IntegerMatrix2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d,
                c * o.a + d * o.c, c * o.b + d * o.d};
    }
    static IntegerMatrix2 identity() { return {1, 0, 0, 1}; }
    bool operator==(const IntegerMatrix2&) const = default;
};

// Atkin-Lehner representative W_d for d | q, q square-free. The stored matrix
// has determinant d and acts on H scaled by 1/sqrt(d).
struct AtkinLehnerElement {
    i64 q;
    i64 d;
    IntegerMatrix2 matrix;
};

// Fractional linear action of an integer matrix with positive determinant.
UpperHalfPoint apply(const IntegerMatrix2& g, const UpperHalfPoint& z);

// u(z,w) = |z-w|^2 / (Im z Im w).
double point_pair_u(const UpperHalfPoint& z, const UpperHalfPoint& w);

// u(g z, z) for det(g) = ell, evaluated without forming g z (exact split into
// real and imaginary parts of a z + b - c z^2 - d z).
double point_pair_u_matrix(const IntegerMatrix2& g, const UpperHalfPoint& z, i64 ell);

struct ReduceResult {
    UpperHalfPoint z;
    IntegerMatrix2 gamma;  // gamma * input = z, det 1
};

// Reduction into D = {|x| <= 1/2, |z| >= 1}; ties resolved toward x <= 0.
ReduceResult reduce_sl2(const UpperHalfPoint& z);

bool in_fundamental_domain(const UpperHalfPoint& z, double tol = 1e-12);

// z -> -1/(q z).
UpperHalfPoint fricke(i64 q, const UpperHalfPoint& z);

// Construction of the W_d representative (det d, the two congruence patterns).
AtkinLehnerElement atkin_lehner_element(i64 q, i64 d);

struct ReduceA0qResult {
    UpperHalfPoint z;
    std::string word;  // applied steps, for reports
};

// Height-maximization over A_0(q) = Gamma_0(q) extended by all W_d, iterated
// to a fixed point. Output satisfies Im z' >= sqrt(3)/(2q).
ReduceA0qResult reduce_a0q(i64 q, const UpperHalfPoint& z);

}  // namespace eislab::modgroup
