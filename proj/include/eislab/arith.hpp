#pragma once

// Small integer-arithmetic helpers: factorization, divisors, Moebius,
// prime sieves, extended gcd. Everything here is desk-scale (<= 1e12).

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

namespace eislab {

using i64 = std::int64_t;
using u64 = std::uint64_t;

// (prime, exponent) pairs by trial division.
std::vector<std::pair<i64, int>> factorize(i64 n);

std::vector<i64> divisors(i64 n);

int mobius(i64 n);

bool is_squarefree(i64 n);

// floor(sqrt(n)) exactly.
i64 isqrt(i64 n);

bool is_perfect_square(i64 n, i64* root = nullptr);

// Primes in [lo, hi] by a segmented Eratosthenes sieve.
std::vector<i64> primes_in(i64 lo, i64 hi);

// Solves a*x + b*y = gcd(a,b); returns gcd.
i64 ext_gcd(i64 a, i64 b, i64& x, i64& y);

// Smallest-prime-factor table for 0..n.
std::vector<i64> spf_table(i64 n);

}  // namespace eislab
