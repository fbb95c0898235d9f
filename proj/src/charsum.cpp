#include "charsum.hpp"

#include <cmath>

namespace scslab {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// e(k/q) root table; index arithmetic only after construction.
std::vector<cplx> root_table(i64 q) {
    std::vector<cplx> roots(std::size_t(q));
    for (i64 k = 0; k < q; ++k) {
        double t = kTwoPi * double(k) / double(q);
        roots[std::size_t(k)] = {std::cos(t), std::sin(t)};
    }
    return roots;
}

// S(h_bar, r; q) for every r mod q, via the shared e(k/(q*stride)) table
// sampled at multiples of `stride`.
std::vector<cplx> kloosterman_row(i64 q, i64 h, const std::vector<cplx>& roots,
                                  i64 stride) {
    std::vector<cplx> row(std::size_t(q), cplx(0.0, 0.0));
    if (q == 1) {
        row[0] = 1.0;
        return row;
    }
    i64 hbar = modinv(h, q).value;
    for (i64 x : reduced_residues(q)) {
        i64 xbar = modinv(x, q).value;
        for (i64 r = 0; r < q; ++r) {
            i64 k = mod_canonical(i128(hbar) * x + i128(r) * xbar, q);
            row[std::size_t(r)] += roots[std::size_t(k * stride)];
        }
    }
    return row;
}

void check_charsum_inputs(i64 q1, i64 q2, i64 h1, i64 h2) {
    if (q1 < 1 || q2 < 1 || h1 < 1 || h2 < 1)
        fail(ErrorCode::Usage, "charsum: q1, q2, h1, h2 must be >= 1");
    if (gcd64(h1, q1) != 1)
        fail(ErrorCode::Usage, "charsum: gcd(h1, q1) != 1");
    if (gcd64(h2, q2) != 1)
        fail(ErrorCode::Usage, "charsum: gcd(h2, q2) != 1");
    if (i128(q1) * q2 > i128(1) << 24)
        fail(ErrorCode::Budget, "charsum: q1*q2 too large for the direct sum");
}

}  // namespace

SumValue charsum_direct(i64 q1, i64 q2, i64 h1, i64 h2, i64 m) {
    check_charsum_inputs(q1, q2, h1, h2);
    i64 Q = q1 * q2;
    auto roots = root_table(Q);
    auto K1 = kloosterman_row(q1, h1, roots, q2);
    auto K2 = kloosterman_row(q2, h2, roots, q1);
    i64 mm = mod_canonical(m, Q);
    Kahan re, im;
    i64 idx = 0;  // (beta * m) mod Q, maintained incrementally
    for (i64 beta = 0; beta < Q; ++beta) {
        cplx t = K1[std::size_t(beta % q1)] * K2[std::size_t(beta % q2)] *
                 roots[std::size_t(idx)];
        re.add(t.real());
        im.add(t.imag());
        idx += mm;
        if (idx >= Q) idx -= Q;
    }
    SumValue v;
    v.re = re.value() / double(Q);
    v.im = im.value() / double(Q);
    return v;
}

ShiftDecomposition decompose_moduli(i64 q1, i64 q2, i64 m, i64 h1, i64 h2) {
    if (q1 < 1 || q2 < 1 || h1 < 1 || h2 < 1 || m < 1)
        fail(ErrorCode::Usage, "decompose_moduli: inputs must be >= 1");
    if (gcd64(h1, q1) != 1 || gcd64(h2, q2) != 1)
        fail(ErrorCode::Usage, "decompose_moduli: gcd(h_i, q_i) != 1");

    ShiftDecomposition d;
    d.q1 = q1;
    d.q2 = q2;
    d.m = m;
    d.h1_in = h1;
    d.h2 = h2;

    d.d_q = gcd64(q1, q2);
    if (gcd64(d.d_q, h1 * h2) != 1)
        fail(ErrorCode::Usage, "decompose_moduli: gcd(d_q, h1 h2) != 1");
    if (m % d.d_q != 0)
        fail(ErrorCode::DqDoesNotDivideM, "decompose_moduli: d_q does not divide m");

    auto cp1 = core_part(q1 / d.d_q, d.d_q);
    d.v1 = cp1.core;
    d.u1 = cp1.cocore;
    auto cp2 = core_part(q2 / d.d_q, d.d_q);
    d.v2 = cp2.core;
    d.u2 = cp2.cocore;

    i64 mtilde = m / d.d_q;
    if (gcd64(mtilde, d.v1 * d.v2) != 1 || gcd64(mtilde, d.u1) != 1 ||
        gcd64(mtilde, d.u2) != 1)
        fail(ErrorCode::Vanishing,
             "decompose_moduli: gcd(m/d_q, v1 v2 u1 u2) != 1, the sum vanishes");

    d.d1 = core_part(d.d_q, d.v1).core;
    d.d2 = core_part(d.d_q, d.v2).core;
    d.d0 = d.d_q / (d.d1 * d.d2);

    d.d_m = core_part(mtilde, d.d0).core;
    d.frak_m = mtilde / d.d_m;

    d.d_h = gcd64(d.u2, h1);
    d.h1 = h1 / d.d_h;
    d.u2_post = d.u2 / d.d_h;

    d.h2_hat = core_part(h2, d.frak_m * d.h1).core;
    d.eta2 = h2 / d.h2_hat;
    d.h1_hat = core_part(d.h1, d.frak_m * h2).core;
    d.eta1 = d.h1 / d.h1_hat;
    return d;
}

TwistPair build_twists(const ShiftDecomposition& d, i64 h1, i64 h2, i64 x0,
                       i64 x1, i64 x2) {
    if (h1 != d.h1_in || h2 != d.h2)
        fail(ErrorCode::Usage, "build_twists: h1, h2 must match the decomposition");
    i64 fm_h1 = d.frak_m * h1;
    i64 fm_h2 = d.frak_m * h2;
    i64 d0dm = d.d0 * d.d_m;

    const i64 m1[4] = {fm_h1, d0dm, d.d1, d.d2};
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (gcd64(m1[i], m1[j]) != 1)
                fail(ErrorCode::NotCoprime,
                     "build_twists: CRT moduli " + std::to_string(m1[i]) + ", " +
                         std::to_string(m1[j]) + " not coprime");

    if (d.d0 > 1 && gcd64(x0, d.d0) != 1)
        fail(ErrorCode::Usage, "build_twists: x0 not a reduced residue mod d0");
    if (d.d1 > 1 && gcd64(x1, d.d1) != 1)
        fail(ErrorCode::Usage, "build_twists: x1 not a reduced residue mod d1");
    if (d.d2 > 1 && gcd64(x2, d.d2) != 1)
        fail(ErrorCode::Usage, "build_twists: x2 not a reduced residue mod d2");

    // the d0 d_m case twists by [1 + x0bar d_m]; its inverse exists iff
    // gcd(x0 + d_m, d0) = 1
    i64 x0bar = modinv(x0, d.d0).value;
    i64 tw0 = mod_canonical(1 + i128(x0bar) * d.d_m, d0dm);
    i64 x1bar = modinv(x1, d.d1).value;
    i64 x2bar = modinv(x2, d.d2).value;

    Residue a1 = crt_combine({
        {mulmod(d.v2 % fm_h1, modinv(d.v1, fm_h1).value, fm_h1), fm_h1},
        {mulmod(mulmod(d.v2 % d0dm, modinv(d.v1, d0dm).value, d0dm),
                modinv(tw0, d0dm).value, d0dm),
         d0dm},
        {mulmod(d.v2 % d.d1, modinv(mod_canonical(x1bar + d.v1, d.d1), d.d1).value,
                d.d1),
         d.d1},
        {modinv(mulmod(d.v1 % d.d2, x2, d.d2), d.d2).value, d.d2},
    });
    Residue a2 = crt_combine({
        {mulmod(d.v1 % fm_h2, modinv(d.v2, fm_h2).value, fm_h2), fm_h2},
        {mulmod(mulmod(d.v1 % d0dm, modinv(d.v2, d0dm).value, d0dm), tw0, d0dm),
         d0dm},
        {modinv(mulmod(d.v2 % d.d1, x1, d.d1), d.d1).value, d.d1},
        {mulmod(d.v1 % d.d2, modinv(mod_canonical(x2bar + d.v2, d.d2), d.d2).value,
                d.d2),
         d.d2},
    });
    return {a1, a2};
}

namespace {

SumValue zero_sum() { return SumValue{0.0, 0.0, std::nullopt}; }

std::optional<ShiftDecomposition> try_decompose(i64 q1, i64 q2, i64 m, i64 h1,
                                                i64 h2) {
    try {
        return decompose_moduli(q1, q2, m, h1, h2);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::Vanishing ||
            e.code() == ErrorCode::DqDoesNotDivideM)
            return std::nullopt;
        throw;
    }
}

}  // namespace

SumValue charsum_factored(i64 q1, i64 q2, i64 h1, i64 h2, i64 m) {
    if (m < 1) fail(ErrorCode::Usage, "charsum_factored: m must be >= 1");
    auto dec = try_decompose(q1, q2, m, h1, h2);
    if (!dec) return zero_sum();
    const ShiftDecomposition& d = *dec;

    i64 mh1 = m * h1;  // pre-extraction h1 throughout
    i64 mh2 = m * h2;
    i64 u1bar = modinv(d.u1, mh1).value;
    i64 u2bar = modinv(d.u2, mh2).value;

    // explicit reciprocity corrections (kept outside the x-sums)
    UnitPhase corr = UnitPhase::make(-i128(d.v2) * d.u2, i128(d.u1) * d.v1 * mh1) +
                     UnitPhase::make(-i128(d.v1) * d.u1, i128(d.u2) * d.v2 * mh2);

    std::vector<UnitPhase> terms;
    for (i64 x0 : reduced_residues(d.d0)) {
        if (d.d0 > 1 && gcd64(mod_canonical(x0 + d.d_m, d.d0), d.d0) != 1)
            continue;  // no such term in the constrained double sum
        for (i64 x1 : reduced_residues(d.d1)) {
            for (i64 x2 : reduced_residues(d.d2)) {
                TwistPair tw = build_twists(d, h1, h2, x0, x1, x2);
                i64 n1 = mulmod(mulmod(u1bar, d.u2 % mh1, mh1), tw.A1.value, mh1);
                i64 n2 = mulmod(mulmod(d.u1 % mh2, u2bar, mh2), tw.A2.value, mh2);
                terms.push_back(corr + UnitPhase::make(n1, mh1) +
                                UnitPhase::make(n2, mh2));
            }
        }
    }
    return sum_of_phases(terms);
}

SumValue charsum_prereciprocity(i64 q1, i64 q2, i64 h1, i64 h2, i64 m) {
    if (m < 1) fail(ErrorCode::Usage, "charsum_prereciprocity: m must be >= 1");
    auto dec = try_decompose(q1, q2, m, h1, h2);
    if (!dec) return zero_sum();
    const ShiftDecomposition& d = *dec;

    i64 mtilde = m / d.d_q;
    i64 dv1 = d.d_q * d.v1;
    i64 dv2 = d.d_q * d.v2;
    i64 dv12 = d.d_q * d.v1 * d.v2;

    // u-block phases before reciprocity
    UnitPhase p1 = UnitPhase::make(
        -i128(mulmod(mulmod(modinv(mod_canonical(i128(m) % d.u1, d.u1), d.u1).value,
                            modinv(h1, d.u1).value, d.u1),
                     mulmod(modinv(d.v1, d.u1).value,
                            mulmod(d.v2 % d.u1, d.u2 % d.u1, d.u1), d.u1),
                     d.u1)),
        d.u1);
    UnitPhase p2 = UnitPhase::make(
        -i128(mulmod(mulmod(modinv(mod_canonical(i128(m) % d.u2, d.u2), d.u2).value,
                            modinv(h2, d.u2).value, d.u2),
                     mulmod(modinv(d.v2, d.u2).value,
                            mulmod(d.v1 % d.u2, d.u1 % d.u2, d.u2), d.u2),
                     d.u2)),
        d.u2);

    i64 co1 = mulmod(d.u2 % dv1, modinv(d.u1, dv1).value, dv1);
    i64 co2 = mulmod(d.u1 % dv2, modinv(d.u2, dv2).value, dv2);
    i64 h1bar = modinv(h1, dv1).value;
    i64 h2bar = modinv(h2, dv2).value;

    std::vector<UnitPhase> terms;
    for (i64 x1 : reduced_residues(dv1)) {
        for (i64 x2 : reduced_residues(dv2)) {
            i64 c = mod_canonical(i128(x1) * d.v2 + i128(x2) * d.v1 + mtilde, dv12);
            if (c != 0) continue;
            i64 n1 = mulmod(mulmod(modinv(x1, dv1).value, h1bar, dv1), co1, dv1);
            i64 n2 = mulmod(mulmod(modinv(x2, dv2).value, h2bar, dv2), co2, dv2);
            terms.push_back(p1 + p2 + UnitPhase::make(n1, dv1) +
                            UnitPhase::make(n2, dv2));
        }
    }
    return sum_of_phases(terms);
}

SumValue charsum_zero_freq(i64 q1, i64 q2, i64 h1, i64 h2) {
    check_charsum_inputs(q1, q2, h1, h2);
    if (q1 != q2) return zero_sum();
    return ramanujan(h1 - h2, q1);
}

// ---- C' family ----

namespace {

struct CprimeContext {
    i64 m, h1, h2, d_h;       // post-extraction h1
    i64 mh1, mh2, big;        // m h1, m h2, m h1 h2
    i64 h2_hat, eta2, kmod;   // kmod = m h1 h2_hat
    i64 a1, a2;               // twists reduced mod mh1, mh2
};

CprimeContext cprime_context(const ShiftDecomposition& d, i64 u2, i64 u3,
                             const TwistPair& tw) {
    CprimeContext c;
    c.m = d.m;
    c.h1 = d.h1;
    c.h2 = d.h2;
    c.d_h = d.d_h;
    c.mh1 = d.mh1();
    c.mh2 = d.mh2();
    c.big = d.big_mod();
    c.h2_hat = d.h2_hat;
    c.eta2 = d.eta2;
    c.kmod = d.kloos_mod();
    if (tw.A1.modulus % c.mh1 != 0 || tw.A2.modulus % c.mh2 != 0)
        fail(ErrorCode::Usage, "cprime: twist moduli incompatible with decomposition");
    c.a1 = mod_canonical(tw.A1.value, c.mh1);
    c.a2 = mod_canonical(tw.A2.value, c.mh2);
    if (gcd64(c.a1, c.mh1) != 1 || gcd64(c.a2, c.mh2) != 1)
        fail(ErrorCode::NotCoprime, "cprime: twists must be units");
    if (gcd64(mod_canonical(u2, c.big), c.big) != 1 ||
        gcd64(mod_canonical(u3, c.big), c.big) != 1)
        fail(ErrorCode::NotCoprime, "cprime: u2, u3 must be units mod m h1 h2");
    return c;
}

// delta((u2bar - u3bar) dhbar A2 h1 + q1* = 0 mod eta2)
bool cprime_delta_condition(const CprimeContext& c, i64 u2, i64 u3, i64 q1star) {
    if (c.eta2 == 1) return true;
    i64 e = c.eta2;
    i64 diff = mod_canonical(i128(modinv(u2, e).value) - modinv(u3, e).value, e);
    i64 t = mulmod(mulmod(diff, modinv(c.d_h, e).value, e),
                   mulmod(c.a2 % e, c.h1 % e, e), e);
    return mod_canonical(i128(t) + q1star, e) == 0;
}

}  // namespace

SumValue cprime_direct(const ShiftDecomposition& d, i64 u2, i64 u3, i64 q1star,
                       const TwistPair& tw) {
    CprimeContext c = cprime_context(d, u2, u3, tw);
    if (c.big > (i64(1) << 20))
        fail(ErrorCode::Budget, "cprime_direct: modulus too large");

    i64 du = mod_canonical(i128(u2) - u3, c.mh1);
    i64 coef1 = mulmod(du, c.a1, c.mh1);
    i64 u2b = modinv(u2, c.mh2).value;
    i64 u3b = modinv(u3, c.mh2).value;
    i64 coef2 = mulmod(mod_canonical(i128(u2b) - u3b, c.mh2),
                       mulmod(modinv(c.d_h, c.mh2).value, c.a2, c.mh2), c.mh2);
    i64 q1m = mod_canonical(q1star, c.big);

    std::vector<UnitPhase> terms;
    for (i64 b = 0; b < c.big; ++b) {
        i64 bm = b % c.mh1;
        if (gcd64(bm, c.mh1) != 1) continue;
        i64 bbar = modinv(bm, c.mh1).value;
        UnitPhase t = UnitPhase::make(mulmod(bbar, coef1, c.mh1), c.mh1) +
                      UnitPhase::make(mulmod(b % c.mh2, coef2, c.mh2), c.mh2) +
                      UnitPhase::make(mulmod(b, q1m, c.big), c.big);
        terms.push_back(t);
    }
    return sum_of_phases(terms);
}

SumValue cprime_factored(const ShiftDecomposition& d, i64 u2, i64 u3, i64 q1star,
                         const TwistPair& tw) {
    CprimeContext c = cprime_context(d, u2, u3, tw);
    bool cond = cprime_delta_condition(c, u2, u3, q1star);

    if (q1star != 0) {
        if (!cond) return zero_sum();
        i64 k = c.kmod;
        i64 arg1 = mulmod(mulmod(mod_canonical(i128(u2) - u3, k), c.a1 % k, k),
                          c.h2_hat % k, k);
        i64 w = modinv(c.eta2, k).value;
        i64 diff = mod_canonical(i128(modinv(u2, k).value) - modinv(u3, k).value, k);
        i64 a2lift = c.a2 % (c.m * c.h2_hat);  // only the mod m h2^ part enters
        i64 arg2 = mod_canonical(
            i128(mulmod(mulmod(diff, modinv(c.d_h, k).value, k),
                        mulmod(mulmod(a2lift % k, c.h1 % k, k), w, k), k)) +
                i128(mulmod(mod_canonical(q1star, k), w, k)),
            k);
        SumValue s = kloosterman(arg1, arg2, k);
        s.re *= double(c.eta2);
        s.im *= double(c.eta2);
        s.exact_terms.reset();
        return s;
    }

    // q1* = 0: split along frak_d, mu, eta1, eta2
    if (!cond) return zero_sum();
    i64 fd = d.frak_d();
    i64 mu = d.mu();
    i64 eta1 = d.eta1;
    i64 fm_h1hat = d.frak_m * d.h1_hat;  // the part of m h1 that mu sees
    i64 fm_h2hat = d.frak_m * d.h2_hat;  // the part of m h2 that mu sees

    cplx total(1.0, 0.0);

    // Kloosterman mod frak_d
    if (fd > 1) {
        i64 a = mulmod(mulmod(mod_canonical(i128(u2) - u3, fd), c.a1 % fd, fd),
                       mulmod(modinv(mulmod(mu % fd, eta1 % fd, fd), fd).value,
                              c.h2_hat % fd, fd),
                       fd);
        i64 diff = mod_canonical(i128(modinv(u2, fd).value) - modinv(u3, fd).value, fd);
        i64 b = mulmod(mulmod(diff, modinv(c.d_h, fd).value, fd),
                       mulmod(mulmod(c.a2 % fd, d.h1_hat % fd, fd),
                              modinv(mulmod(c.eta2 % fd, mu % fd, fd), fd).value, fd),
                       fd);
        total *= kloosterman(a, b, fd).value();
    }

    // Kloosterman mod mu
    if (mu > 1) {
        i64 za = mulmod(mod_canonical(i128(u2) - u3, fm_h1hat),
                        mulmod(c.a1 % fm_h1hat,
                               modinv(mod_canonical(i128(fd) * eta1, fm_h1hat),
                                      fm_h1hat).value,
                               fm_h1hat),
                        fm_h1hat);
        i64 a = mulmod(za % mu, d.h2_hat % mu, mu);
        i64 diffh = mod_canonical(
            i128(modinv(u2, fm_h2hat).value) - modinv(u3, fm_h2hat).value, fm_h2hat);
        i64 zb = mulmod(mulmod(diffh, modinv(c.d_h, fm_h2hat).value, fm_h2hat),
                        mulmod(c.a2 % fm_h2hat,
                               modinv(mod_canonical(i128(fd) * c.eta2, fm_h2hat),
                                      fm_h2hat).value,
                               fm_h2hat),
                        fm_h2hat);
        i64 b = mulmod(zb % mu, d.h1_hat % mu, mu);
        total *= kloosterman(a, b, mu).value();
    }

    // Ramanujan mod eta1
    if (eta1 > 1) {
        i64 a = mulmod(mulmod(mod_canonical(i128(u2) - u3, eta1), c.a1 % eta1, eta1),
                       mulmod(modinv(mulmod(mu % eta1, fd % eta1, eta1), eta1).value,
                              c.h2_hat % eta1, eta1),
                       eta1);
        total *= ramanujan(a, eta1).value();
    }

    total *= double(c.eta2);
    SumValue v;
    v.re = total.real();
    v.im = total.imag();
    return v;
}

SumValue cprime_eval(const ShiftDecomposition& d, i64 u2, i64 u3, i64 q1star,
                     const TwistPair& tw, EvalMode mode) {
    return mode == EvalMode::BruteForce ? cprime_direct(d, u2, u3, q1star, tw)
                                        : cprime_factored(d, u2, u3, q1star, tw);
}

SumValue c1_normalized(const ShiftDecomposition& d, i64 u2, i64 u3, i64 q1star,
                       const TwistPair& tw, EvalMode mode) {
    SumValue s = cprime_eval(d, u2, u3, q1star, tw, mode);
    double scale = double(d.eta2) * std::sqrt(double(d.kloos_mod()));
    SumValue v;
    v.re = s.re / scale;
    v.im = s.im / scale;
    return v;
}

namespace {

cplx cj_value(int j, const ShiftDecomposition& d, const std::vector<i64>& qs,
              i64 u_hi, i64 u_lo, const TwistPair& tw, EvalMode mode) {
    if (j == 1) return c1_normalized(d, u_hi, u_lo, qs[0], tw, mode).value();
    i64 M = d.big_mod();
    std::vector<i64> head(qs.begin(), qs.end() - 1);
    i64 qj = mod_canonical(qs.back(), M);
    cplx acc(0.0, 0.0);
    for (i64 b : reduced_residues(M)) {
        cplx lhs = cj_value(j - 1, d, head, b, u_hi, tw, mode);
        cplx rhs = cj_value(j - 1, d, head, b, u_lo, tw, mode);
        acc += lhs * std::conj(rhs) * UnitPhase::make(mulmod(b, qj, M), M).render();
    }
    return acc / std::sqrt(double(d.kloos_mod()));
}

}  // namespace

SumValue cj_iterate(int j, const ShiftDecomposition& d,
                    const std::vector<i64>& qstars, i64 u_hi, i64 u_lo,
                    const TwistPair& tw, EvalMode mode) {
    if (j < 1 || std::size_t(j) != qstars.size())
        fail(ErrorCode::Usage, "cj_iterate: need one q* per level");
    if (j > 3) fail(ErrorCode::Budget, "cj_iterate: j capped at 3 at desk scale");
    double cost = std::pow(double(d.big_mod()), double(j));
    if (mode == EvalMode::BruteForce) cost *= double(d.big_mod());
    if (cost > 5e9) fail(ErrorCode::Budget, "cj_iterate: modulus too large for j");
    cplx v = cj_value(j, d, qstars, u_hi, u_lo, tw, mode);
    SumValue s;
    s.re = v.real();
    s.im = v.imag();
    return s;
}

cplx c2_m_factor(const ShiftDecomposition& d, const TwistPair& tw, i64 q1star,
                 i64 q2star, i64 u3, i64 u4) {
    i64 k = d.kloos_mod();
    i64 a1 = mod_canonical(tw.A1.value, d.mh1());
    i64 a2lift = mod_canonical(tw.A2.value, d.mh2()) % (d.m * d.h2_hat);
    i64 w = modinv(d.eta2, k).value;
    i64 dhbar = modinv(d.d_h, k).value;

    auto c1m = [&](i64 ua, i64 ub) -> cplx {
        i64 arg1 = mulmod(mulmod(mod_canonical(i128(ua) - ub, k), a1 % k, k),
                          d.h2_hat % k, k);
        i64 diff = mod_canonical(i128(modinv(ua, k).value) - modinv(ub, k).value, k);
        i64 arg2 = mod_canonical(
            i128(mulmod(mulmod(diff, dhbar, k),
                        mulmod(mulmod(a2lift % k, d.h1 % k, k), w, k), k)) +
                i128(mulmod(mod_canonical(q1star, k), w, k)),
            k);
        return kloosterman(arg1, arg2, k).value() / std::sqrt(double(k));
    };

    cplx acc(0.0, 0.0);
    i64 q2m = mod_canonical(q2star, k);
    for (i64 b : reduced_residues(k)) {
        cplx t = c1m(b, u3) * std::conj(c1m(b, u4));
        acc += t * UnitPhase::make(mulmod(mulmod(b, q2m, k), w, k), k).render();
    }
    return acc / std::sqrt(double(k));
}

std::optional<cplx> c2_h2_factor(const ShiftDecomposition& d, const TwistPair& tw,
                                 i64 q1star, i64 q2star, i64 u3, i64 u4) {
    i64 e = d.eta2;
    if (e == 1) return cplx(1.0, 0.0);
    if (mod_canonical(i128(u3) - u4, e) != 0) return cplx(0.0, 0.0);
    i64 a2 = mod_canonical(tw.A2.value, e);
    i64 shift = mulmod(mulmod(modinv(mulmod(d.h1 % e, a2, e), e).value, d.d_h % e, e),
                       mod_canonical(q1star, e), e);
    i64 t = mod_canonical(i128(modinv(u3, e).value) - shift, e);
    if (gcd64(t, e) != 1) return std::nullopt;  // trailing inverse does not exist
    i64 n = mulmod(mulmod(mod_canonical(q2star, e),
                          modinv(d.kloos_mod() % e, e).value, e),
                   modinv(t, e).value, e);
    return UnitPhase::make(n, e).render();
}

std::set<ExceptionalCongruence> classify_exceptional(const ShiftDecomposition& d,
                                                     const TwistPair& tw,
                                                     i64 q1star, i64 u_hi,
                                                     i64 u_lo) {
    i64 k = d.kloos_mod();
    std::set<ExceptionalCongruence> out;
    i64 a2 = mod_canonical(tw.A2.value, k);
    i64 lead = mulmod(mulmod(a2, d.h1 % k, k), modinv(d.d_h, k).value, k);
    i64 ua = modinv(u_hi, k).value;
    i64 ub = modinv(u_lo, k).value;
    i64 q = mod_canonical(q1star, k);

    if (mod_canonical(i128(u_hi) - u_lo, k) == 0)
        out.insert(ExceptionalCongruence::Cong1);
    i64 t = mulmod(lead, mod_canonical(i128(ua) - ub, k), k);
    if (mod_canonical(i128(q) + t, k) == 0 || mod_canonical(i128(q) - t, k) == 0)
        out.insert(ExceptionalCongruence::Cong2);
    if (q == mulmod(lead, ua, k)) out.insert(ExceptionalCongruence::Cong3);
    if (q == mulmod(lead, ub, k)) out.insert(ExceptionalCongruence::Cong4);
    return out;
}

// ---- samplers ----

CharsumTuple sample_charsum_tuple(Rng& rng, i64 max_q1q2) {
    for (int attempt = 0; attempt < 100000; ++attempt) {
        i64 q1 = rng.uniform(1, 72);
        i64 q2 = rng.uniform(1, std::max<i64>(1, max_q1q2 / q1));
        if (q1 * q2 > max_q1q2) continue;
        i64 h1 = rng.uniform(1, 3 * q1 + 5);
        i64 h2 = rng.uniform(1, 3 * q2 + 5);
        if (gcd64(h1, q1) != 1 || gcd64(h2, q2) != 1) continue;
        i64 dq = gcd64(q1, q2);
        if (gcd64(dq, h1 * h2) != 1) continue;
        auto c1 = core_part(q1 / dq, dq);
        auto c2 = core_part(q2 / dq, dq);
        i64 units = c1.core * c2.core * c1.cocore * c2.cocore;
        i64 mt = 0;
        for (int t = 0; t < 64; ++t) {
            i64 cand = rng.uniform(1, 40);
            if (gcd64(cand, units) == 1) {
                mt = cand;
                break;
            }
        }
        if (mt == 0) continue;
        return {q1, q2, h1, h2, dq * mt};
    }
    fail(ErrorCode::Internal, "sample_charsum_tuple: exhausted attempts");
}

CprimeCase sample_cprime_case(Rng& rng, i64 max_product, bool zero_freq) {
    for (int attempt = 0; attempt < 100000; ++attempt) {
        i64 q1 = rng.uniform(1, 48);
        i64 q2 = rng.uniform(1, 48);
        i64 h1 = rng.uniform(1, 14);
        i64 h2 = rng.uniform(1, 14);
        if (gcd64(h1, q1) != 1 || gcd64(h2, q2) != 1) continue;
        i64 dq = gcd64(q1, q2);
        if (gcd64(dq, h1 * h2) != 1) continue;
        auto c1 = core_part(q1 / dq, dq);
        auto c2 = core_part(q2 / dq, dq);
        i64 units = c1.core * c2.core * c1.cocore * c2.cocore;
        i64 mt = rng.uniform(1, 10);
        if (gcd64(mt, units) != 1) continue;
        i64 m = dq * mt;

        ShiftDecomposition dec;
        try {
            dec = decompose_moduli(q1, q2, m, h1, h2);
        } catch (const Error&) {
            continue;
        }
        i64 M = dec.big_mod();
        if (M > max_product || M < 2) continue;

        i64 x0 = 0, x1 = 0, x2 = 0;
        bool ok = false;
        for (int t = 0; t < 64 && !ok; ++t) {
            x0 = rng.uniform(0, dec.d0 - 1);
            x1 = rng.uniform(0, dec.d1 - 1);
            x2 = rng.uniform(0, dec.d2 - 1);
            if (dec.d0 == 1) x0 = 0;
            if (dec.d1 == 1) x1 = 0;
            if (dec.d2 == 1) x2 = 0;
            ok = (dec.d0 == 1 || (gcd64(x0, dec.d0) == 1 &&
                                  gcd64(mod_canonical(x0 + dec.d_m, dec.d0), dec.d0) == 1)) &&
                 (dec.d1 == 1 || gcd64(x1, dec.d1) == 1) &&
                 (dec.d2 == 1 || gcd64(x2, dec.d2) == 1);
        }
        if (!ok) continue;

        CprimeCase cs;
        cs.dec = dec;
        cs.twists = build_twists(dec, h1, h2, x0, x1, x2);
        i64 u2 = 0, u3 = 0;
        for (int t = 0; t < 200 && (u2 == 0 || u3 == 0); ++t) {
            i64 cand = rng.uniform(1, M - 1 > 0 ? M - 1 : 1);
            if (gcd64(cand, M) != 1) continue;
            if (u2 == 0)
                u2 = cand;
            else
                u3 = cand;
        }
        if (u2 == 0 || u3 == 0) continue;
        cs.u2 = u2;
        cs.u3 = u3;
        cs.q1star = zero_freq ? 0 : rng.uniform(1, 2 * M) * (rng.uniform(0, 1) ? 1 : -1);
        return cs;
    }
    fail(ErrorCode::Internal, "sample_cprime_case: exhausted attempts");
}

}  // namespace scslab
