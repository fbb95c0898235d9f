#include "modarith.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>

namespace scslab {

EgcdResult egcd(i64 a, i64 b) {
    if (a == 0 && b == 0) fail(ErrorCode::Usage, "egcd(0, 0) is undefined");
    // iterative extended Euclid on |a|, |b|; signs restored at the end
    i64 old_r = a < 0 ? -a : a, r = b < 0 ? -b : b;
    i64 old_x = 1, x = 0;
    i64 old_y = 0, y = 1;
    while (r != 0) {
        i64 q = old_r / r;
        i64 t;
        t = old_r - q * r; old_r = r; r = t;
        t = old_x - q * x; old_x = x; x = t;
        t = old_y - q * y; old_y = y; y = t;
    }
    EgcdResult res;
    res.g = old_r;
    res.x = a < 0 ? -old_x : old_x;
    res.y = b < 0 ? -old_y : old_y;
    return res;
}

i64 gcd64(i64 a, i64 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        i64 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

i64 mod_canonical(i128 a, i64 n) {
    if (n <= 0) fail(ErrorCode::Usage, "modulus must be positive");
    i128 r = a % n;
    if (r < 0) r += n;
    return i64(r);
}

i64 mulmod(i64 a, i64 b, i64 n) {
    if (n > kModulusCap) fail(ErrorCode::Overflow, "modulus above 2^62 cap");
    return mod_canonical(i128(a) * i128(b), n);
}

Residue modinv(i64 a, i64 n) {
    if (n <= 0) fail(ErrorCode::Usage, "modinv: modulus must be positive");
    if (n > kModulusCap) fail(ErrorCode::Overflow, "modinv: modulus above 2^62 cap");
    if (n == 1) return {0, 1};
    i64 a0 = mod_canonical(a, n);
    EgcdResult e = egcd(a0, n);
    if (e.g != 1)
        fail(ErrorCode::NotInvertible,
             "modinv: gcd(" + std::to_string(a0) + ", " + std::to_string(n) +
                 ") = " + std::to_string(e.g));
    return {mod_canonical(e.x, n), n};
}

Residue crt_combine(const std::vector<Residue>& parts) {
    if (parts.empty()) fail(ErrorCode::Usage, "crt_combine: empty input");
    Residue acc = parts[0];
    acc.value = mod_canonical(acc.value, acc.modulus);
    for (std::size_t i = 1; i < parts.size(); ++i) {
        const Residue& p = parts[i];
        i64 g = gcd64(acc.modulus, p.modulus);
        if (g != 1)
            fail(ErrorCode::NotCoprime,
                 "crt_combine: moduli " + std::to_string(acc.modulus) + " and " +
                     std::to_string(p.modulus) + " share factor " + std::to_string(g));
        if (i128(acc.modulus) * p.modulus > i128(kModulusCap))
            fail(ErrorCode::Overflow, "crt_combine: combined modulus above 2^62 cap");
        i64 m = acc.modulus * p.modulus;
        // x = acc.value + acc.modulus * t, t = (p.value - acc.value) / acc.modulus mod p.modulus
        i64 inv = modinv(acc.modulus % p.modulus, p.modulus).value;
        i64 diff = mod_canonical(i128(p.value) - acc.value, p.modulus);
        i64 t = mulmod(diff, inv, p.modulus);
        acc.value = mod_canonical(i128(acc.value) + i128(acc.modulus) * t, m);
        acc.modulus = m;
    }
    return acc;
}

CorePartResult core_part(i64 a, i64 b) {
    if (a < 1 || b < 1) fail(ErrorCode::Usage, "core_part: inputs must be >= 1");
    CorePartResult r;
    r.core = 1;
    r.cocore = a;
    i64 g = gcd64(r.cocore, b);
    while (g > 1) {
        r.core *= g;
        r.cocore /= g;
        g = gcd64(r.cocore, g);
    }
    return r;
}

namespace {

std::vector<i64> build_sieve() {
    const i64 limit = 1000000;
    std::vector<bool> composite(std::size_t(limit) + 1, false);
    std::vector<i64> primes;
    for (i64 p = 2; p <= limit; ++p) {
        if (composite[std::size_t(p)]) continue;
        primes.push_back(p);
        for (i64 q = p * p; q <= limit; q += p) composite[std::size_t(q)] = true;
    }
    return primes;
}

}  // namespace

const std::vector<i64>& small_primes() {
    static const std::vector<i64> primes = build_sieve();
    return primes;
}

std::vector<std::pair<i64, int>> factorize(i64 n) {
    if (n < 1) fail(ErrorCode::Usage, "factorize: n must be >= 1");
    if (n > kDivisorsCap) fail(ErrorCode::Overflow, "factorize: n above 10^12 cap");
    std::vector<std::pair<i64, int>> fs;
    for (i64 p : small_primes()) {
        if (p * p > n) break;
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        fs.emplace_back(p, e);
    }
    // no factor <= 10^6 and n <= 10^12, so any leftover is prime
    if (n > 1) fs.emplace_back(n, 1);
    return fs;
}

std::vector<i64> divisors(i64 n) {
    auto fs = factorize(n);
    std::vector<i64> ds{1};
    for (auto [p, e] : fs) {
        std::size_t base = ds.size();
        i64 pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i) ds.push_back(ds[i] * pk);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

i64 euler_phi(i64 n) {
    i64 phi = n;
    for (auto [p, e] : factorize(n)) phi -= phi / p;
    return phi;
}

int mobius(i64 n) {
    auto fs = factorize(n);
    for (auto [p, e] : fs)
        if (e > 1) return 0;
    return fs.size() % 2 == 0 ? 1 : -1;
}

i64 divisor_count(i64 n) {
    i64 d = 1;
    for (auto [p, e] : factorize(n)) d *= e + 1;
    return d;
}

std::vector<i64> reduced_residues(i64 n) {
    if (n < 1) fail(ErrorCode::Usage, "reduced_residues: n must be >= 1");
    if (n == 1) return {0};
    std::vector<i64> out;
    out.reserve(std::size_t(euler_phi(n)));
    for (i64 x = 1; x < n; ++x)
        if (gcd64(x, n) == 1) out.push_back(x);
    return out;
}

}  // namespace scslab
