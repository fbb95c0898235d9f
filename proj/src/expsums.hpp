#pragma once

// Complete exponential sums evaluated exactly: additive characters as
// reduced rational phases, Kloosterman sums, Ramanujan sums, and the
// explicit Weil bound d(c) * sqrt(c) * sqrt(gcd(a,b,c)).

#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include "modarith.hpp"

namespace scslab {

using cplx = std::complex<double>;

// e(num/den) with the fraction stored reduced and num in [0, den).
struct UnitPhase {
    i64 num = 0;
    i64 den = 1;

    static UnitPhase make(i128 num, i128 den);
    UnitPhase operator+(const UnitPhase& o) const;  // phase product
    UnitPhase operator-() const;
    cplx render() const;
};

// Retention cap for exact phase term lists (memory guard).
constexpr std::size_t kExactTermsCap = 4096;

struct SumValue {
    double re = 0.0;
    double im = 0.0;
    std::optional<std::vector<UnitPhase>> exact_terms;  // kept when small

    cplx value() const { return {re, im}; }
};

SumValue sum_of_phases(const std::vector<UnitPhase>& terms);

// S(a, b; c) = sum over x in (Z/c)* of e((a x + b xbar)/c). S(a,b;1) = 1.
SumValue kloosterman(i64 a, i64 b, i64 c);

// Ramanujan sum c_q(a); real and integer valued.
SumValue ramanujan(i64 a, i64 q);

// d(c) * sqrt(c) * sqrt(gcd(a, b, c)); dominates |kloosterman(a,b,c)|.
double weil_bound(i64 a, i64 b, i64 c);

// Generic complete sum over the reduced residues mod q, accumulated in
// ascending residue order (bit-for-bit reproducible).
SumValue complete_sum(const std::function<cplx(i64)>& f, i64 q);

// Fast Ramanujan value via the divisor formula sum_{d | (a,q)} mu(q/d) d.
i64 ramanujan_divisor_formula(i64 a, i64 q);

}  // namespace scslab
