#include "eislab/counting.hpp"

#include "eislab/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace eislab::counting {

using modgroup::point_pair_u_matrix;

MatrixClass classify(const IntegerMatrix2& g, i64 ell) {
    if (g.det() != ell) throw std::invalid_argument("classify: det mismatch");
    i64 tr = g.a + g.d;
    if (tr * tr == 4 * ell) return MatrixClass::parabolic;
    if (g.c == 0) {
        if (g.a != g.d) return MatrixClass::upper;
        throw std::logic_error("classify: c=0, a=d must be parabolic");
    }
    return MatrixClass::generic;
}

// Outer height-ratio bound: u <= delta forces |cz+d|^2 / ell into [1/g, g].
static double g_of_delta(double delta) {
    double r = 1.0 + delta / 2.0 + std::sqrt(delta + delta * delta / 4.0);
    return r * r;
}

static void check_query(const CountQuery& q) {
    if (!(q.z.y > 0)) throw std::invalid_argument("counting: y must be positive");
    if (q.ell < 1) throw std::invalid_argument("counting: ell must be >= 1");
    if (!(q.delta > 0.0 && q.delta <= 1.0))
        throw std::invalid_argument("counting: delta must lie in (0, 1]");
}

static i64 modinv(i64 a, i64 m) {
    i64 x, y;
    i64 g = ext_gcd(((a % m) + m) % m, m, x, y);
    if (g != 1) throw std::logic_error("modinv: not invertible");
    return ((x % m) + m) % m;
}

namespace {

struct Collector {
    const CountQuery& q;
    bool keep;
    CountBreakdown out;
    void offer(i64 a, i64 b, i64 c, i64 d) {
        IntegerMatrix2 g{a, b, c, d};
        if (g.det() != q.ell) return;
        if (point_pair_u_matrix(g, q.z, q.ell) > q.delta) return;
        switch (classify(g, q.ell)) {
            case MatrixClass::generic: ++out.m_star; break;
            case MatrixClass::upper: ++out.m_u; break;
            case MatrixClass::parabolic: ++out.m_p; break;
        }
        if (keep) out.matrices.push_back(g);
    }
    void finish() {
        if (!keep) return;
        std::sort(out.matrices.begin(), out.matrices.end(), [](auto& l, auto& r) {
            return std::tie(l.a, l.b, l.c, l.d) < std::tie(r.a, r.b, r.c, r.d);
        });
    }
};

}  // namespace

CountBreakdown enumerate_matrices(const CountQuery& q, bool keep_matrices) {
    check_query(q);
    const double x = q.z.x, y = q.z.y;
    const double ell = (double)q.ell, delta = q.delta;
    const double g = g_of_delta(delta) * (1.0 + 1e-12);
    const double A = std::sqrt(ell * delta) * (1.0 + 1e-12) + 1e-9;  // |a-d-2cx| bound
    const double cb = std::sqrt(ell * g) / y;
    if (cb > 2e8)
        throw std::runtime_error("enumerate_matrices: feasibility guard, c-range " +
                                 std::to_string(cb));
    const i64 cmax = (i64)std::floor(cb + 1e-9) + 1;

    // feasibility estimate: d-range times expected a-progression length
    double est = 0.0;
    for (i64 c = -cmax; c <= cmax; ++c) {
        double rad2 = ell * g - (double)c * c * y * y;
        if (rad2 < 0) continue;
        double B = std::sqrt(rad2);
        double dcount = 2.0 * B + 1.0;
        double acount = (c == 0) ? 16.0 : (2.0 * A / std::abs((double)c) + 1.0);
        est += dcount * std::max(1.0, acount);
    }
    if (est > 1e8)
        throw std::runtime_error("enumerate_matrices: feasibility guard, predicted work " +
                                 std::to_string((i64)est));

    Collector col{q, keep_matrices, {}};

    // c = 0: a d = ell over divisor pairs (both signs), b in its Re window
    for (i64 av : divisors(q.ell)) {
        for (int sgn = 0; sgn < 2; ++sgn) {
            i64 a = sgn ? -av : av;
            i64 d = q.ell / a;
            double e = (double)(a - d);
            double rad2 = delta * ell * y * y - e * e * y * y;
            if (rad2 < -1e-9) continue;
            double Bb = std::sqrt(std::max(0.0, rad2)) * (1.0 + 1e-12) + 1e-9;
            i64 blo = (i64)std::ceil(-e * x - Bb), bhi = (i64)std::floor(-e * x + Bb);
            for (i64 b = blo; b <= bhi; ++b) col.offer(a, b, 0, d);
        }
    }

    // c != 0: d window from the height annulus, a on the progression
    // a*d == ell (mod c), b = (ad - ell)/c
    for (i64 c = -cmax; c <= cmax; ++c) {
        if (c == 0) continue;
        double rad2 = ell * g - (double)c * c * y * y;
        if (rad2 < 0) continue;
        double B = std::sqrt(rad2) * (1.0 + 1e-12) + 1e-9;
        i64 dlo = (i64)std::ceil(-c * x - B), dhi = (i64)std::floor(-c * x + B);
        i64 m = std::llabs(c);
        for (i64 d = dlo; d <= dhi; ++d) {
            double center = (double)d + 2.0 * c * x;
            i64 alo = (i64)std::ceil(center - A), ahi = (i64)std::floor(center + A);
            if (alo > ahi) continue;
            i64 dm = ((d % m) + m) % m;
            i64 g0 = std::gcd(dm, m);
            if (q.ell % g0 != 0) continue;
            i64 m1 = m / g0;
            i64 a0 = alo;
            if (m1 > 1) {
                i64 d1 = (dm / g0) % m1;
                i64 l1 = (q.ell / g0) % m1;
                i64 res = (i64)((__int128)l1 * modinv(d1, m1) % m1);
                i64 diff = (res - alo) % m1;
                if (diff < 0) diff += m1;
                a0 = alo + diff;
            }
            for (i64 a = a0; a <= ahi; a += m1) {
                i64 num = a * d - q.ell;
                if (num % c != 0) continue;
                col.offer(a, num / c, c, d);
            }
        }
    }

    col.finish();
    return col.out;
}

CountBreakdown brute_force_enumerate(const CountQuery& q) {
    check_query(q);
    const double x = q.z.x, y = q.z.y;
    const double ell = (double)q.ell, delta = q.delta;
    const double g = g_of_delta(delta) * (1.0 + 1e-12);
    i64 cb = (i64)std::floor(std::sqrt(ell * g) / y) + 1;
    i64 db = (i64)std::floor((double)cb * std::abs(x) + std::sqrt(ell * g)) + 1;
    i64 ab = (i64)std::floor((double)db + 2.0 * cb * std::abs(x) + std::sqrt(ell * delta)) + 1;
    i64 bb = (i64)std::floor((double)(ab + db) * std::abs(x) +
                             (double)cb * (x * x + y * y) + y * std::sqrt(ell * delta)) +
             2;
    // b is solved from the determinant when c != 0
    double work = (2.0 * ab + 1) * (2.0 * cb + 1) * (2.0 * db + 1) +
                  (2.0 * ab + 1) * (2.0 * bb + 1);
    if (work > 8e8)
        throw std::runtime_error("brute_force_enumerate: too large, work " +
                                 std::to_string((i64)work));
    Collector col{q, true, {}};
    for (i64 a = -ab; a <= ab; ++a)
        for (i64 c = -cb; c <= cb; ++c)
            for (i64 d = -db; d <= db; ++d) {
                // det = ad - bc = ell fixes b when c != 0
                if (c != 0) {
                    i64 num = a * d - q.ell;
                    if (num % c != 0) continue;
                    i64 b = num / c;
                    if (std::llabs(b) <= bb) col.offer(a, b, c, d);
                } else {
                    if (a * d != q.ell) continue;
                    for (i64 b = -bb; b <= bb; ++b) col.offer(a, b, 0, d);
                }
            }
    col.finish();
    return col.out;
}

CountBreakdown parabolic_fast(const CountQuery& q) {
    check_query(q);
    i64 m_root;
    if (!is_perfect_square(q.ell, &m_root))
        throw std::invalid_argument("parabolic_fast: ell must be a perfect square");
    const i64 m = m_root;
    const double x = q.z.x, y = q.z.y;
    const double ell = (double)q.ell, delta = q.delta;
    const double g = g_of_delta(delta) * (1.0 + 1e-12);

    Collector col{q, true, {}};

    // c = 0: a = d = +-m, |b| <= m y sqrt(delta)
    {
        double Bb = (double)m * y * std::sqrt(delta) * (1.0 + 1e-12) + 1e-9;
        for (int sgn = 0; sgn < 2; ++sgn) {
            i64 a = sgn ? -m : m;
            for (i64 b = (i64)std::ceil(-Bb); b <= (i64)std::floor(Bb); ++b)
                col.offer(a, b, 0, a);
        }
    }

    // c != 0: trace = +-2m, e = a-d even with c | (e/2)^2, b = -e^2/(4c)
    double lowx = std::max(0.0, (double)m - std::sqrt(ell * delta) / 2.0);
    double crad2 = ell * g - lowx * lowx * (1.0 - 1e-12);
    if (crad2 > 0) {
        i64 cmaxp = (i64)std::floor(std::sqrt(crad2) / y + 1e-9) + 1;
        double A = std::sqrt(ell * delta) * (1.0 + 1e-12) + 1e-9;
        for (i64 c = -cmaxp; c <= cmaxp; ++c) {
            if (c == 0) continue;
            // e in [2cx - A, 2cx + A], e = 2f, c | f^2
            i64 flo = (i64)std::ceil((2.0 * c * x - A) / 2.0);
            i64 fhi = (i64)std::floor((2.0 * c * x + A) / 2.0);
            for (i64 f = flo; f <= fhi; ++f) {
                if ((f * f) % std::llabs(c) != 0) continue;
                i64 b = -(f * f) / c;
                i64 e = 2 * f;
                for (int sgn = 0; sgn < 2; ++sgn) {
                    i64 tr = sgn ? -2 * m : 2 * m;
                    i64 a = (tr + e) / 2, d = (tr - e) / 2;
                    col.offer(a, b, c, d);
                }
            }
        }
    }
    col.finish();
    // parabolic_fast only returns the parabolic class
    col.out.m_star = 0;
    col.out.m_u = 0;
    return col.out;
}

static LemmaReport run_lemma(const UpperHalfPoint& z, const std::vector<i64>& L_list,
                             const std::vector<double>& delta_list, bool upper_variant) {
    LemmaReport rep;
    for (i64 L : L_list) {
        for (double delta : delta_list) {
            double value = 0.0;
            if (!upper_variant) {
                for (i64 ell = 1; ell <= L; ++ell) {
                    CountBreakdown cb = enumerate_matrices({z, ell, delta}, false);
                    value += (double)cb.m_star;
                }
            } else {
                std::vector<i64> ps = primes_in(2, L);
                for (size_t i = 0; i < ps.size(); ++i) {
                    for (size_t j = i; j < ps.size(); ++j) {
                        CountBreakdown cb = enumerate_matrices({z, ps[i] * ps[j], delta}, false);
                        double mult = (i == j) ? 1.0 : 2.0;  // ordered pairs
                        value += mult * (double)cb.m_u;
                    }
                }
            }
            double Ld = (double)L, eps = 0.1;
            double bound = upper_variant
                               ? std::pow(Ld, eps) * (Ld + Ld * Ld * Ld * std::sqrt(delta) * z.y)
                               : std::pow(Ld, eps) *
                                     (Ld / z.y + std::pow(Ld, 1.5) * std::sqrt(delta) +
                                      Ld * Ld * delta);
            double ratio = value / bound;
            rep.rows.push_back({Ld, delta, value, bound, ratio});
            rep.sup_ratio = std::max(rep.sup_ratio, ratio);
        }
    }
    return rep;
}

LemmaReport check_lemma_generic(const UpperHalfPoint& z, const std::vector<i64>& L_list,
                                const std::vector<double>& delta_list) {
    return run_lemma(z, L_list, delta_list, false);
}

LemmaReport check_lemma_upper(const UpperHalfPoint& z, const std::vector<i64>& L_list,
                              const std::vector<double>& delta_list) {
    return run_lemma(z, L_list, delta_list, true);
}

double stieltjes_weighted_count(const UpperHalfPoint& z, i64 ell,
                                const std::function<double(double)>& abs_k) {
    CountBreakdown cb = enumerate_matrices({z, ell, 1.0}, true);
    Kahan acc;
    for (const auto& g : cb.matrices)
        acc.add(abs_k(point_pair_u_matrix(g, z, ell)));
    return acc.value();
}

}  // namespace eislab::counting
