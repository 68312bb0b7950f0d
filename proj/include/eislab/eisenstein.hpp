#pragma once

// Level-1 real-analytic Eisenstein series: Hecke eigenvalues eta, the
// scattering term phi(s), the Fourier-expansion evaluator, the direct
// lattice-sum oracle (Re s >= 2), and the truncated remainder F(z,s).

#include "eislab/modgroup.hpp"
#include "eislab/numeric.hpp"
#include "eislab/specfun.hpp"

#include <unordered_map>

namespace eislab::eisenstein {

using modgroup::UpperHalfPoint;

struct SpectralPoint {
    double sigma;
    double T;  // s = sigma + i T
};

struct EisensteinValue {
    cplx total;
    cplx main_terms;  // delta y^s + phi(s) y^{1-s}
    cplx remainder;   // F(z,s); total = main_terms + remainder as stored
    double tail_bound;  // bound on the neglected Bessel tail
};

// eta_{it}(n) = sum_{ad=n} (a/d)^{it}; real, computed multiplicatively.
double eta_it(i64 n, double t);

// eta(n, s) with exponent w = s - 1/2: sum_{ad=n} (a/d)^w.
cplx eta_exponent(i64 n, cplx w);

// phi(s) = xi(2(1-s))/xi(2s), with xi(2-2s) routed through the functional
// equation when Re(2-2s) < 1/2 so that Gamma poles are never touched.
cplx scattering_phi(const SpectralPoint& s);

// Per-row cache of scaled K-Bessel values, shared across the x-grid of a
// scan row (u = 2 pi n y depends on n and y only). Keys compare exactly on
// the bit pattern of y. Not thread-safe across writers; give each scan row
// its own instance.
struct KBesselCache {
    struct PairHash {
        size_t operator()(const std::pair<i64, i64>& p) const {
            return std::hash<i64>()(p.first * 0x9E3779B97F4A7C15LL ^ p.second);
        }
    };
    double t = -1.0;
    std::unordered_map<std::pair<i64, i64>, double, PairHash> values;
    double get(double t_, i64 n, double y_);
};

// Fourier-expansion evaluator. sigma = 1/2 with |T| <= 512 (scaled Bessel
// path, e^{-pi T/2} recombined through log xi), or sigma in {2,3} with T = 0
// (half-integer K closed forms). tol only widens the truncation point.
EisensteinValue eisenstein_fourier(const UpperHalfPoint& z, const SpectralPoint& s,
                                   double tol = 1e-12, KBesselCache* cache = nullptr);

// Direct coprime lattice sum (1/2) sum y^s / |cz+d|^{2s}, Re s >= 2, with an
// analytic continuum tail correction beyond the cutoff radius.
cplx eisenstein_lattice(const UpperHalfPoint& z, const SpectralPoint& s,
                        double radius = 1200.0, bool tail_correction = true);

// F(z,s) = E(z,s) - y^s - phi(s) y^{1-s}.
cplx f_remainder(const UpperHalfPoint& z, const SpectralPoint& s, double tol = 1e-12,
                 KBesselCache* cache = nullptr);

}  // namespace eislab::eisenstein
