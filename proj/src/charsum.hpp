#pragma once

// Character sums attached to the shifted-convolution analysis:
//
//   C  = (1/(q1 q2)) sum_{b mod q1 q2} S(h1bar, b; q1) S(h2bar, b; q2) e(b m / (q1 q2))
//
// together with its exact CRT factorization (twisted phases A1, A2, and the
// two reciprocity correction phases kept explicit so the factored form
// equals the direct sum, not just up to a smooth factor), the m = 0
// collapse to a Ramanujan sum, the dual sums C' with their Kloosterman
// reductions, the normalized iterates C_j, and the exceptional-congruence
// classifier.
//
// Every fast path has a brute-force oracle next to it, selected by EvalMode;
// both share these type definitions.

#include <optional>
#include <set>

#include "expsums.hpp"

namespace scslab {

// Modulus bookkeeping for (q1, q2, m, h1, h2):
//   d_q = (q1,q2), v_i = (q_i/d_q, d_q^inf), u_i = q_i/(d_q v_i)
//   d_q = d0 d1 d2 with d1 = (d_q, v1^inf), d2 = (d_q, v2^inf)
//   d_m = (m/d_q, d0^inf), frak_m = m/(d_q d_m)
//   d_h = (u2, h1); h1 and u2 are then replaced by h1/d_h, u2/d_h
//   h1_hat = (h1, (frak_m h2)^inf), h2_hat = (h2, (frak_m h1)^inf),
//   eta_i = h_i / h_i_hat
// The d_h-extracted pair is stored separately (h1_post, u2_post); u1, u2
// keep their pre-extraction values so the C factorization can use them.
struct ShiftDecomposition {
    i64 q1 = 1, q2 = 1, m = 1;
    i64 h1_in = 1, h2 = 1;  // inputs (h2 is never relabeled)

    i64 d_q = 1, v1 = 1, v2 = 1, u1 = 1, u2 = 1;
    i64 d0 = 1, d1 = 1, d2 = 1;
    i64 d_m = 1, frak_m = 1;

    i64 d_h = 1, h1 = 1, u2_post = 1;  // Notation 5.2 relabeling
    i64 h1_hat = 1, h2_hat = 1, eta1 = 1, eta2 = 1;

    i64 frak_d() const { return d_q * d_m; }                 // d_q d_m
    i64 mu() const { return frak_m * h1_hat * h2_hat; }      // frak_m h1^ h2^
    i64 mh1() const { return m * h1; }                       // post-extraction
    i64 mh2() const { return m * h2; }
    i64 big_mod() const { return m * h1 * h2; }              // C' period
    i64 kloos_mod() const { return m * h1 * h2_hat; }        // C_{1,m} modulus
};

struct TwistPair {
    Residue A1;  // mod m * h1 (pre-extraction h1)
    Residue A2;  // mod m * h2
};

enum class EvalMode { BruteForce, Factored };

// ---- the base character sum C ----

SumValue charsum_direct(i64 q1, i64 q2, i64 h1, i64 h2, i64 m);

// Throws: Usage (coprimality preconditions), DqDoesNotDivideM, Vanishing.
ShiftDecomposition decompose_moduli(i64 q1, i64 q2, i64 m, i64 h1, i64 h2);

// The twisted residues of the CRT factorization. x0, x1, x2 are reduced
// residues mod d0, d1, d2; x0 must additionally satisfy
// gcd(x0 + d_m, d0) = 1 or the d0 d_m case has no inverse.
TwistPair build_twists(const ShiftDecomposition& dec, i64 h1, i64 h2,
                       i64 x0, i64 x1, i64 x2);

// Fully factored C with the two reciprocity correction phases
// e(-v2 u2/(u1 v1 m h1)) e(-v1 u1/(u2 v2 m h2)) kept explicit.
// Vanishing decompositions return 0. Requires m >= 1.
SumValue charsum_factored(i64 q1, i64 q2, i64 h1, i64 h2, i64 m);

// Appendix-B display *before* reciprocity: the two u-phases
// e(-mbar h1bar v1bar v2 u2 / u1), e(-mbar h2bar v2bar v1 u1 / u2) times the
// constrained double sum over x1 mod d_q v1, x2 mod d_q v2.
SumValue charsum_prereciprocity(i64 q1, i64 q2, i64 h1, i64 h2, i64 m);

// m = 0 collapse: delta(q1 = q2) * c_{q1}(h1 - h2).
SumValue charsum_zero_freq(i64 q1, i64 q2, i64 h1, i64 h2);

// ---- the dual sums C', C_1, C_j ----

// C'(u2, u3, q1*) =
//   sum_{b mod m h1 h2, (b, m h1) = 1}
//     e(bbar (u2-u3) A1 / (m h1)) e((u2bar-u3bar) dhbar A2 b / (m h2))
//     e(b q1* / (m h1 h2))
// with h1 the post-extraction value from dec and A1, A2 from `twists`
// (reduced mod m h1 and mod m h2 respectively).
SumValue cprime_direct(const ShiftDecomposition& dec, i64 u2, i64 u3,
                       i64 q1star, const TwistPair& twists);

// q1* != 0: single Kloosterman sum mod m h1 h2^ times eta2 * delta(...).
// q1* = 0: Kloosterman mod d_q d_m x Kloosterman mod mu x Ramanujan mod
// eta1 x eta2 * delta(...).
SumValue cprime_factored(const ShiftDecomposition& dec, i64 u2, i64 u3,
                         i64 q1star, const TwistPair& twists);

SumValue cprime_eval(const ShiftDecomposition& dec, i64 u2, i64 u3,
                     i64 q1star, const TwistPair& twists, EvalMode mode);

// C_1 = C' / (eta2 sqrt(m h1 h2^)).
SumValue c1_normalized(const ShiftDecomposition& dec, i64 u2, i64 u3,
                       i64 q1star, const TwistPair& twists,
                       EvalMode mode = EvalMode::Factored);

// C_j, j >= 2, by the Poisson iteration
//   C_j(q*_1..q*_j, u, u') = (m h1 h2^)^{-1/2} sum*_{b mod m h1 h2}
//       C_{j-1}(..., b, u) conj(C_{j-1}(..., b, u')) e(q*_j b / (m h1 h2)).
// qstars.size() == j; mode picks the C_1 evaluation path. j capped at 3.
SumValue cj_iterate(int j, const ShiftDecomposition& dec,
                    const std::vector<i64>& qstars, i64 u_hi, i64 u_lo,
                    const TwistPair& twists, EvalMode mode);

// The two factors of C_2: the mod-(m h1 h2^) part and the eta2 part
// delta(u3 = u4 mod eta2) * e_{eta2}(...) with the trailing exponential
// retained. The eta2 factor needs an inverse that may not exist; nullopt
// signals such a tuple (callers skip and log it).
cplx c2_m_factor(const ShiftDecomposition& dec, const TwistPair& twists,
                 i64 q1star, i64 q2star, i64 u3, i64 u4);
std::optional<cplx> c2_h2_factor(const ShiftDecomposition& dec,
                                 const TwistPair& twists, i64 q1star,
                                 i64 q2star, i64 u3, i64 u4);

// ---- exceptional congruences (Lemma B.2 trichotomy, as a classifier) ----

enum class ExceptionalCongruence { Cong1, Cong2, Cong3, Cong4 };

std::set<ExceptionalCongruence> classify_exceptional(
    const ShiftDecomposition& dec, const TwistPair& twists, i64 q1star,
    i64 u_hi, i64 u_lo);

// ---- seeded samplers shared by tests, sweeps and reports ----

struct CharsumTuple {
    i64 q1, q2, h1, h2, m;
};

// Admissible tuple: gcd(h_i, q_i) = 1, gcd(d_q, h1 h2) = 1, d_q | m,
// gcd(m/d_q, v1 v2 u1 u2) = 1, q1 q2 <= max_q1q2, m >= 1.
CharsumTuple sample_charsum_tuple(Rng& rng, i64 max_q1q2);

struct CprimeCase {
    ShiftDecomposition dec;
    TwistPair twists;
    i64 u2, u3, q1star;
};

// Random C' case with m h1 h2 <= max_product; q1star = 0 when zero_freq.
// Twists are built via build_twists from random x0, x1, x2.
CprimeCase sample_cprime_case(Rng& rng, i64 max_product, bool zero_freq);

}  // namespace scslab
