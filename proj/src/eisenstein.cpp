#include "eislab/eisenstein.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace eislab::eisenstein {

using specfun::bessel_k_half;
using specfun::bessel_k_scaled;
using specfun::log_xi;
using specfun::xi;

double eta_it(i64 n, double t) {
    if (n < 1) throw std::invalid_argument("eta_it: n must be positive");
    double prod = 1.0;
    for (auto [p, e] : factorize(n)) {
        double theta = t * std::log((double)p);
        double local = 0.0;
        for (int j = 0; j <= e; ++j) local += std::cos((e - 2 * j) * theta);
        prod *= local;
    }
    return prod;
}

cplx eta_exponent(i64 n, cplx w) {
    if (n < 1) throw std::invalid_argument("eta_exponent: n must be positive");
    cplx prod = 1.0;
    for (auto [p, e] : factorize(n)) {
        double lp = std::log((double)p);
        cplx local = 0.0;
        for (int j = 0; j <= e; ++j) local += std::exp((double)(e - 2 * j) * w * lp);
        prod *= local;
    }
    return prod;
}

cplx scattering_phi(const SpectralPoint& sp) {
    // memoized; scans hit the same s thousands of times
    static std::mutex mu;
    static std::map<std::pair<double, double>, cplx> cache;
    {
        std::lock_guard<std::mutex> lk(mu);
        auto it = cache.find({sp.sigma, sp.T});
        if (it != cache.end()) return it->second;
    }
    cplx s(sp.sigma, sp.T);
    cplx w = 2.0 - 2.0 * s;
    // xi(w) = xi(1-w); evaluate on whichever side keeps Gamma pole-free.
    cplx warg = (w.real() >= 0.5) ? w : (1.0 - w);
    cplx val = std::exp(log_xi(warg) - log_xi(2.0 * s));
    std::lock_guard<std::mutex> lk(mu);
    if (cache.size() > 100000) cache.clear();
    cache.emplace(std::make_pair(sp.sigma, sp.T), val);
    return val;
}

// log xi(1 + 2iT), memoized for the same reason.
static cplx log_xi_one_plus(double twoT) {
    static std::mutex mu;
    static std::map<double, cplx> cache;
    {
        std::lock_guard<std::mutex> lk(mu);
        auto it = cache.find(twoT);
        if (it != cache.end()) return it->second;
    }
    cplx val = log_xi(cplx(1.0, twoT));
    std::lock_guard<std::mutex> lk(mu);
    if (cache.size() > 100000) cache.clear();
    cache.emplace(twoT, val);
    return val;
}

double KBesselCache::get(double t_, i64 n, double y_) {
    if (t != t_) {
        values.clear();
        t = t_;
    }
    std::pair<i64, i64> key{n, std::bit_cast<i64>(y_)};
    auto it = values.find(key);
    if (it != values.end()) return it->second;
    double v = bessel_k_scaled(t_, 2.0 * PI * (double)n * y_).value;
    values.emplace(key, v);
    return v;
}

// eta_{it}(n) for n = 1..nmax via a smallest-prime-factor sieve.
static std::vector<double> eta_row(i64 nmax, double t) {
    std::vector<double> eta(nmax + 1, 1.0);
    if (nmax < 1) return eta;
    std::vector<i64> spf = spf_table(nmax);
    std::vector<double> cos_cache;
    for (i64 n = 2; n <= nmax; ++n) {
        i64 p = spf[n];
        i64 m = n, e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        double theta = t * std::log((double)p);
        double local = 0.0;
        for (i64 j = 0; j <= e; ++j) local += std::cos((double)(e - 2 * j) * theta);
        eta[n] = eta[m] * local;
    }
    return eta;
}

static EisensteinValue fourier_critical(const UpperHalfPoint& z, double T, double tol,
                                        KBesselCache* cache) {
    const double y = z.y, x = z.x;
    const double Tp = std::abs(T);
    if (Tp < 0.02)
        throw std::domain_error("eisenstein_fourier: |T| < 0.02 unsupported on sigma=1/2");

    i64 nmax = (i64)std::ceil((Tp + 12.0 * std::cbrt(Tp) + 40.0) / (2.0 * PI * y));
    if (tol < 1e-12) nmax = (i64)std::ceil(nmax * 1.05) + 4;
    if (nmax < 1) nmax = 1;
    if (nmax > 10000000)
        throw std::range_error("eisenstein_fourier: y too small, n_max > 1e7");

    cplx s(0.5, Tp);
    // 2 sqrt(y) e^{-pi T/2} / xi(1+2iT), assembled in log space
    cplx lc = std::log(2.0) + 0.5 * std::log(y) - PI * Tp / 2.0 - log_xi_one_plus(2.0 * Tp);
    cplx coef = std::exp(lc);

    std::vector<double> eta = eta_row(nmax, Tp);

    // Bessel column; parallel chunks when no row cache is attached.
    std::vector<double> svals(nmax + 1);
    if (cache) {
        for (i64 n = 1; n <= nmax; ++n) svals[n] = cache->get(Tp, n, y);
    } else {
        const i64 chunk = 32;
        const i64 nblocks = (nmax + chunk - 1) / chunk;
#pragma omp parallel for schedule(dynamic, 1) if (nblocks > 4)
        for (i64 b = 0; b < nblocks; ++b) {
            i64 hi = std::min<i64>(nmax, (b + 1) * chunk);
            for (i64 n = b * chunk + 1; n <= hi; ++n)
                svals[n] = bessel_k_scaled(Tp, 2.0 * PI * (double)n * y).value;
        }
    }

    Kahan acc;
    for (i64 n = 1; n <= nmax; ++n)
        acc.add(eta[n] * svals[n] * 2.0 * std::cos(2.0 * PI * n * x));
    cplx remainder = coef * acc.value();

    // first neglected term bound (divisor count <= n^{0.5} crude at this scale)
    double s_next = bessel_k_scaled(Tp, 2.0 * PI * (double)(nmax + 1) * y).value;
    double tail = std::abs(coef) * 2.0 * std::sqrt((double)nmax + 1.0) * std::abs(s_next) * 8.0;

    cplx ys = std::exp(s * std::log(y));
    cplx y1s = std::exp((1.0 - s) * std::log(y));
    cplx phi = scattering_phi({0.5, Tp});
    cplx main = ys + phi * y1s;
    EisensteinValue out{main + remainder, main, remainder, tail};
    if (T < 0) {
        out.total = std::conj(out.total);
        out.main_terms = std::conj(out.main_terms);
        out.remainder = std::conj(out.remainder);
    }
    return out;
}

static EisensteinValue fourier_real_s(const UpperHalfPoint& z, double sigma, double tol) {
    const double y = z.y, x = z.x;
    int twice_nu = (int)std::lround(2.0 * (sigma - 0.5));
    if (twice_nu != 3 && twice_nu != 5)
        throw std::domain_error("eisenstein_fourier: real-s path supports sigma in {2,3}");

    i64 nmax = (i64)std::ceil(60.0 / (2.0 * PI * y)) + 2;
    (void)tol;
    double xi2s = xi(cplx(2.0 * sigma, 0)).real();
    double coef = 2.0 * std::sqrt(y) / xi2s;

    Kahan acc;
    double w = sigma - 0.5;
    for (i64 n = 1; n <= nmax; ++n) {
        double etan = eta_exponent(n, cplx(w, 0)).real();
        double kv = bessel_k_half(twice_nu, 2.0 * PI * (double)n * y);
        acc.add(etan * kv * 2.0 * std::cos(2.0 * PI * n * x));
    }
    cplx remainder = coef * acc.value();
    double tail = std::abs(coef) * std::pow((double)nmax + 1.0, w + 0.5) *
                  bessel_k_half(twice_nu, 2.0 * PI * (double)(nmax + 1) * y) * 4.0;

    double ys = std::pow(y, sigma), y1s = std::pow(y, 1.0 - sigma);
    cplx phi = scattering_phi({sigma, 0.0});
    cplx main = ys + phi * y1s;
    return {main + remainder, main, remainder, tail};
}

EisensteinValue eisenstein_fourier(const UpperHalfPoint& z, const SpectralPoint& s,
                                   double tol, KBesselCache* cache) {
    if (!(z.y > 0)) throw std::invalid_argument("eisenstein_fourier: y must be positive");
    if (s.sigma == 0.5) return fourier_critical(z, s.T, tol, cache);
    if (s.T == 0.0) return fourier_real_s(z, s.sigma, tol);
    throw std::domain_error("eisenstein_fourier: sigma must be 1/2, or s real in {2,3}");
}

cplx eisenstein_lattice(const UpperHalfPoint& z, const SpectralPoint& sp,
                        double radius, bool tail_correction) {
    if (sp.sigma < 2.0)
        throw std::domain_error("eisenstein_lattice: requires sigma >= 2");
    const double y = z.y, x = z.x, R = radius;
    const double R2 = R * R;
    cplx s(sp.sigma, sp.T);
    const bool fast2 = (sp.T == 0.0 && sp.sigma == 2.0);
    const bool fast3 = (sp.T == 0.0 && sp.sigma == 3.0);

    const i64 cmax = (i64)std::floor(R / y);
    cplx sum = det_block_sum_c(2 * cmax + 1, 1, [&](i64 idx) -> cplx {
        const i64 c = idx - cmax;
        const double cy2 = c * (double)c * y * y;
        const double w = std::sqrt(std::max(0.0, R2 - cy2));
        const i64 dlo = (i64)std::ceil(-c * x - w), dhi = (i64)std::floor(-c * x + w);
        KahanC acc;
        for (i64 d = dlo; d <= dhi; ++d) {
            if (c == 0 && d == 0) continue;
            if (std::gcd(c, d) != 1) continue;
            const double re = c * x + d;
            const double w2 = re * re + cy2;
            if (fast2) {
                acc.add(1.0 / (w2 * w2));
            } else if (fast3) {
                acc.add(1.0 / (w2 * w2 * w2));
            } else {
                acc.add(std::exp(-s * std::log(w2)));
            }
        }
        return acc.value();
    });

    cplx ys = std::exp(s * std::log(y));
    cplx total = 0.5 * ys * sum;
    if (tail_correction) {
        // coprime-pair continuum tail: (1/2) y^s (1/zeta(2)) (2 pi / y) R^{2-2s}/(2s-2)
        cplx tail = 0.5 * ys * (6.0 / (PI * PI)) * (2.0 * PI / y) *
                    std::exp((2.0 - 2.0 * s) * std::log(R)) / (2.0 * s - 2.0);
        total += tail;
    }
    return total;
}

cplx f_remainder(const UpperHalfPoint& z, const SpectralPoint& s, double tol,
                 KBesselCache* cache) {
    return eisenstein_fourier(z, s, tol, cache).remainder;
}

}  // namespace eislab::eisenstein
