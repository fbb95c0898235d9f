#include "expsums.hpp"

#include <cmath>

namespace scslab {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

i128 gcd128(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

}  // namespace

UnitPhase UnitPhase::make(i128 num, i128 den) {
    if (den == 0) fail(ErrorCode::Usage, "UnitPhase: zero denominator");
    if (den < 0) {
        den = -den;
        num = -num;
    }
    num %= den;
    if (num < 0) num += den;
    i128 g = gcd128(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    if (den > i128(kModulusCap))
        fail(ErrorCode::Overflow, "UnitPhase: reduced denominator above 2^62 cap");
    return {i64(num), i64(den)};
}

UnitPhase UnitPhase::operator+(const UnitPhase& o) const {
    return make(i128(num) * o.den + i128(o.num) * den, i128(den) * o.den);
}

UnitPhase UnitPhase::operator-() const { return make(-i128(num), den); }

cplx UnitPhase::render() const {
    double t = kTwoPi * (double(num) / double(den));
    return {std::cos(t), std::sin(t)};
}

SumValue sum_of_phases(const std::vector<UnitPhase>& terms) {
    Kahan re, im;
    for (const UnitPhase& t : terms) {
        cplx z = t.render();
        re.add(z.real());
        im.add(z.imag());
    }
    SumValue v;
    v.re = re.value();
    v.im = im.value();
    if (terms.size() <= kExactTermsCap) v.exact_terms = terms;
    return v;
}

SumValue kloosterman(i64 a, i64 b, i64 c) {
    if (c < 1) fail(ErrorCode::Usage, "kloosterman: c must be >= 1");
    if (c > kModulusCap) fail(ErrorCode::Overflow, "kloosterman: c above 2^62 cap");
    i64 a0 = mod_canonical(a, c), b0 = mod_canonical(b, c);
    std::vector<UnitPhase> terms;
    for (i64 x : reduced_residues(c)) {
        i64 xbar = c == 1 ? 0 : modinv(x, c).value;
        i64 num = mod_canonical(i128(a0) * x + i128(b0) * xbar, c);
        terms.push_back(UnitPhase::make(num, c));
    }
    return sum_of_phases(terms);
}

SumValue ramanujan(i64 a, i64 q) {
    if (q < 1) fail(ErrorCode::Usage, "ramanujan: q must be >= 1");
    if (q > kModulusCap) fail(ErrorCode::Overflow, "ramanujan: q above 2^62 cap");
    i64 a0 = mod_canonical(a, q);
    std::vector<UnitPhase> terms;
    for (i64 x : reduced_residues(q))
        terms.push_back(UnitPhase::make(mulmod(a0, x, q), q));
    return sum_of_phases(terms);
}

double weil_bound(i64 a, i64 b, i64 c) {
    if (c < 1) fail(ErrorCode::Usage, "weil_bound: c must be >= 1");
    i64 g = gcd64(gcd64(a, b), c);
    if (g == 0) g = c;  // a = b = 0
    return double(divisor_count(c)) * std::sqrt(double(c)) * std::sqrt(double(g));
}

SumValue complete_sum(const std::function<cplx(i64)>& f, i64 q) {
    if (q < 1) fail(ErrorCode::Usage, "complete_sum: q must be >= 1");
    Kahan re, im;
    for (i64 x : reduced_residues(q)) {
        cplx z = f(x);
        re.add(z.real());
        im.add(z.imag());
    }
    SumValue v;
    v.re = re.value();
    v.im = im.value();
    return v;
}

i64 ramanujan_divisor_formula(i64 a, i64 q) {
    i64 a0 = mod_canonical(a, q);
    i64 g = a0 == 0 ? q : gcd64(a0, q);
    i64 s = 0;
    for (i64 d : divisors(g)) s += mobius(q / d) * d;
    return s;
}

}  // namespace scslab
