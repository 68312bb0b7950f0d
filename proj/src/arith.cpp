#include "eislab/arith.hpp"

#include <algorithm>
#include <cmath>

namespace eislab {

std::vector<std::pair<i64, int>> factorize(i64 n) {
    if (n <= 0) throw std::invalid_argument("factorize: n must be positive");
    std::vector<std::pair<i64, int>> out;
    for (i64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.push_back({p, e});
    }
    if (n > 1) out.push_back({n, 1});
    return out;
}

std::vector<i64> divisors(i64 n) {
    std::vector<i64> out{1};
    for (auto [p, e] : factorize(n)) {
        size_t sz = out.size();
        i64 pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (size_t i = 0; i < sz; ++i) out.push_back(out[i] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

int mobius(i64 n) {
    int m = 1;
    for (auto [p, e] : factorize(n)) {
        if (e > 1) return 0;
        m = -m;
    }
    return m;
}

bool is_squarefree(i64 n) {
    if (n <= 0) return false;
    for (auto [p, e] : factorize(n))
        if (e > 1) return false;
    return true;
}

i64 isqrt(i64 n) {
    if (n < 0) throw std::invalid_argument("isqrt: negative");
    i64 r = (i64)std::sqrt((double)n);
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

bool is_perfect_square(i64 n, i64* root) {
    if (n < 0) return false;
    i64 r = isqrt(n);
    if (root) *root = r;
    return r * r == n;
}

std::vector<i64> primes_in(i64 lo, i64 hi) {
    std::vector<i64> out;
    if (hi < 2 || hi < lo) return out;
    lo = std::max<i64>(lo, 2);
    i64 root = isqrt(hi);
    std::vector<char> small(root + 1, 1);
    std::vector<i64> base;
    for (i64 p = 2; p <= root; ++p) {
        if (!small[p]) continue;
        base.push_back(p);
        for (i64 q = p * p; q <= root; q += p) small[q] = 0;
    }
    std::vector<char> seg(hi - lo + 1, 1);
    for (i64 p : base) {
        i64 start = std::max(p * p, ((lo + p - 1) / p) * p);
        for (i64 q = start; q <= hi; q += p) seg[q - lo] = 0;
    }
    for (i64 n = lo; n <= hi; ++n)
        if (seg[n - lo]) out.push_back(n);
    return out;
}

i64 ext_gcd(i64 a, i64 b, i64& x, i64& y) {
    if (b == 0) {
        x = (a >= 0) ? 1 : -1;
        y = 0;
        return std::abs(a);
    }
    i64 x1, y1;
    i64 g = ext_gcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

std::vector<i64> spf_table(i64 n) {
    std::vector<i64> spf(n + 1, 0);
    for (i64 i = 2; i <= n; ++i) {
        if (spf[i]) continue;
        for (i64 j = i; j <= n; j += i)
            if (!spf[j]) spf[j] = i;
    }
    return spf;
}

}  // namespace eislab
