#pragma once

// Exact integer / modular arithmetic kernels. Everything here is pure and
// reentrant; the prime sieve is built once per process and read-only after.
//
// All moduli are capped at 2^62 so that any product of two canonical
// residues fits in a signed 128-bit intermediate.

#include <vector>

#include "common.hpp"

namespace scslab {

constexpr i64 kModulusCap = i64(1) << 62;
constexpr i64 kDivisorsCap = 1000000000000LL;  // 10^12, trial division reach

struct Residue {
    i64 value   = 0;  // in [0, modulus)
    i64 modulus = 1;
};

struct CorePartResult {
    i64 core   = 1;  // part of `a` supported on the primes of `b`
    i64 cocore = 1;  // a / core, coprime to b
};

struct EgcdResult {
    i64 g = 0;
    i64 x = 0;
    i64 y = 0;  // a*x + b*y == g
};

// Bezout coefficients; errors when a == b == 0.
EgcdResult egcd(i64 a, i64 b);

i64 gcd64(i64 a, i64 b);

// Canonicalize a into [0, n); accepts any sign of a.
i64 mod_canonical(i128 a, i64 n);

// (a * b) mod n through a 128-bit intermediate. n < 2^62.
i64 mulmod(i64 a, i64 b, i64 n);

// Inverse of a mod n; throws NotInvertible carrying the gcd in the message.
Residue modinv(i64 a, i64 n);

// CRT combination of residues with pairwise coprime moduli.
Residue crt_combine(const std::vector<Residue>& parts);

// core = (a, b^inf): the largest divisor of a supported on primes of b.
CorePartResult core_part(i64 a, i64 b);

// Ascending divisor list; n up to kDivisorsCap.
std::vector<i64> divisors(i64 n);

// (prime, exponent) pairs, ascending; same cap as divisors().
std::vector<std::pair<i64, int>> factorize(i64 n);

i64 euler_phi(i64 n);
int mobius(i64 n);           // 0 when n is not squarefree
i64 divisor_count(i64 n);    // d(n)

// Units of Z/n ascending. n = 1 yields {0} (the single residue class).
std::vector<i64> reduced_residues(i64 n);

// Shared prime sieve up to 10^6 (built on first use, then immutable).
const std::vector<i64>& small_primes();

}  // namespace scslab
