#include "eislab/modgroup.hpp"

#include <cmath>
#include <stdexcept>

namespace eislab::modgroup {

UpperHalfPoint apply(const IntegerMatrix2& g, const UpperHalfPoint& z) {
    double cx_d_re = g.c * z.x + g.d;
    double cx_d_im = g.c * z.y;
    double den = cx_d_re * cx_d_re + cx_d_im * cx_d_im;
    double nu_re = g.a * z.x + g.b;
    double nu_im = g.a * z.y;
    // (az+b)(conj(cz+d)) / |cz+d|^2
    double rx = (nu_re * cx_d_re + nu_im * cx_d_im) / den;
    double ry = (nu_im * cx_d_re - nu_re * cx_d_im) / den;
    return {rx, ry};
}

double point_pair_u(const UpperHalfPoint& z, const UpperHalfPoint& w) {
    double dx = z.x - w.x, dy = z.y - w.y;
    return (dx * dx + dy * dy) / (z.y * w.y);
}

double point_pair_u_matrix(const IntegerMatrix2& g, const UpperHalfPoint& z, i64 ell) {
    // u(gz, z) = |az + b - c z^2 - d z|^2 / (ell y^2)
    double re = g.a * z.x + g.b - g.c * (z.x * z.x - z.y * z.y) - g.d * z.x;
    double im = z.y * (g.a - g.d - 2.0 * g.c * z.x);
    return (re * re + im * im) / ((double)ell * z.y * z.y);
}

bool in_fundamental_domain(const UpperHalfPoint& z, double tol) {
    return std::abs(z.x) <= 0.5 + tol && z.x * z.x + z.y * z.y >= 1.0 - tol;
}

ReduceResult reduce_sl2(const UpperHalfPoint& zin) {
    if (!(zin.y > 0)) throw std::invalid_argument("reduce_sl2: y must be positive");
    UpperHalfPoint z = zin;
    IntegerMatrix2 g = IntegerMatrix2::identity();
    for (int iter = 0; iter < 10000; ++iter) {
        double n = std::round(z.x);
        if (n != 0.0) {
            i64 ni = (i64)n;
            g = IntegerMatrix2{1, -ni, 0, 1}.mul(g);
            z.x -= n;
        }
        double norm = z.x * z.x + z.y * z.y;
        if (norm >= 1.0 - 1e-15) break;
        g = IntegerMatrix2{0, -1, 1, 0}.mul(g);
        z = {-z.x / norm, z.y / norm};
    }
    // boundary normalization toward x <= 0
    if (z.x > 0.5 - 1e-12) {
        g = IntegerMatrix2{1, -1, 0, 1}.mul(g);
        z.x -= 1.0;
    }
    double norm = z.x * z.x + z.y * z.y;
    if (std::abs(norm - 1.0) < 1e-12 && z.x > 1e-12) {
        g = IntegerMatrix2{0, -1, 1, 0}.mul(g);
        z = {-z.x / norm, z.y / norm};
    }
    return {z, g};
}

UpperHalfPoint fricke(i64 q, const UpperHalfPoint& z) {
    if (q < 1) throw std::invalid_argument("fricke: q must be positive");
    double den = (double)q * (z.x * z.x + z.y * z.y);
    return {-z.x / den, z.y / den};
}

AtkinLehnerElement atkin_lehner_element(i64 q, i64 d) {
    if (!is_squarefree(q)) throw std::invalid_argument("atkin_lehner: q must be square-free");
    if (d < 1 || q % d != 0) throw std::invalid_argument("atkin_lehner: d must divide q");
    if (d == 1) return {q, 1, IntegerMatrix2::identity()};
    // W_d = (d u, v; q, d) with det = d(d u) - q v = d, i.e. d u - (q/d) v = 1.
    i64 u, v;
    i64 g = ext_gcd(d, q / d, u, v);
    if (g != 1) throw std::logic_error("atkin_lehner: gcd(d, q/d) != 1");
    v = -v;  // d*u + (q/d)*(-v) = 1  ->  d*u - (q/d)*v = 1
    IntegerMatrix2 m{d * u, v, q, d};
    if (m.det() != d) throw std::logic_error("atkin_lehner: determinant mismatch");
    return {q, d, m};
}

// Exhaustive Gamma_0(q) height maximization: repeatedly minimize |cz+d|^2
// over coprime (c,d) with q | c, |c| <= 2/y, until no improvement; keeps
// |x| <= 1/2 throughout.
static UpperHalfPoint gamma0_maximize(i64 q, UpperHalfPoint z, int* steps = nullptr) {
    for (int iter = 0; iter < 2000; ++iter) {
        z.x -= std::round(z.x);
        double best = 1.0;
        i64 bc = 0, bd = 1;
        i64 cmax = (i64)std::ceil(2.0 / z.y) + q;
        for (i64 c = q; c <= cmax; c += q) {
            if (c * z.y > 1.0 + 1e-12) break;
            double t = -c * z.x;
            for (i64 d = (i64)std::floor(t) - 1; d <= (i64)std::ceil(t) + 1; ++d) {
                if (std::gcd(c, d) != 1) continue;
                double re = c * z.x + d, im = c * z.y;
                double n = re * re + im * im;
                if (n < best * (1.0 - 1e-13)) {
                    best = n;
                    bc = c;
                    bd = d;
                }
            }
        }
        if (bc == 0) {
            z.x -= std::round(z.x);
            return z;
        }
        i64 a, b;
        ext_gcd(bd, -bc, a, b);  // a*bd - b*bc = 1
        IntegerMatrix2 g{a, b, bc, bd};
        if (g.det() != 1) throw std::logic_error("gamma0_maximize: det != 1");
        z = apply(g, z);
        if (steps) ++*steps;
    }
    throw std::runtime_error("gamma0_maximize: iteration limit (reduction bug)");
}

ReduceA0qResult reduce_a0q(i64 q, const UpperHalfPoint& zin) {
    if (!is_squarefree(q)) throw std::invalid_argument("reduce_a0q: q must be square-free");
    if (q > 210) throw std::invalid_argument("reduce_a0q: q capped at 210");
    if (!(zin.y > 0)) throw std::invalid_argument("reduce_a0q: y must be positive");

    std::vector<AtkinLehnerElement> wd;
    for (i64 d : divisors(q))
        if (d > 1) wd.push_back(atkin_lehner_element(q, d));

    std::string word;
    UpperHalfPoint z = gamma0_maximize(q, zin);
    for (int iter = 0; iter < 1000; ++iter) {
        double besty = z.y * (1.0 + 1e-13);
        UpperHalfPoint best_z{};
        i64 best_d = 0;
        for (const auto& w : wd) {
            UpperHalfPoint cand = gamma0_maximize(q, apply(w.matrix, z));
            if (cand.y > besty) {
                besty = cand.y;
                best_z = cand;
                best_d = w.d;
            }
        }
        if (best_d == 0) {
            z.x -= std::round(z.x);
            return {z, word};
        }
        z = best_z;
        word += "W" + std::to_string(best_d) + "G";
    }
    throw std::runtime_error("reduce_a0q: iteration limit (reduction bug)");
}

}  // namespace eislab::modgroup
