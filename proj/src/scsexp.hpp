#pragma once

// Shifted-convolution experiment harness: the direct double sum, grid scans
// against the theorem envelope, exponent fitting, and the numeric Poisson
// summation check.

#include <functional>

#include "coeffs.hpp"
#include "oscint.hpp"

namespace scslab {

struct ScsParams {
    i64 N = 1000;
    i64 H = 10;
    double K = 0.0;  // diagnostic; defaults to sqrt(N)/H when 0
};

// sum_h sum_n A(1,n) A(1,n+h) V(n/N) V(h/H), compensated accumulation,
// h-stripes run in parallel and merged in stripe order. N*H <= 1e9.
double scs_direct(const ScsParams& p, const CoefficientTable& table);

// Independent oracle with the opposite loop nesting (n outer, h inner).
double scs_direct_oracle(const ScsParams& p, const CoefficientTable& table);

struct ScanRow {
    i64 N = 0, H = 0;
    double K = 0.0;
    double s_prime = 0.0;
    double trivial_bound = 0.0;     // N * H
    double theorem_envelope = 0.0;  // N^{1/4} H^{5/2} + H^{5/8} N^{17/16} + N^{9/8} H^{1/4}
    double ratio_trivial = 0.0;
    double ratio_envelope = 0.0;
};

double theorem_envelope(double N, double H);

std::vector<ScanRow> scan(const std::vector<std::pair<i64, i64>>& grid,
                          const CoefficientTable& table);

// Least-squares slope of log |s_prime| against log N; zero rows dropped.
struct ExponentFit {
    double slope = 0.0;
    int dropped = 0;
};
ExponentFit exponent_fit(const std::vector<ScanRow>& rows);

struct PoissonCheck {
    cdbl lhs;   // sum_n C(n) f(n)
    cdbl rhs;   // (1/q) sum_n sum_b C(b) e(nb/q) fhat(n/q)
    double diff = 0.0;
};

// C(n) periodic mod q, f smooth compactly supported on [support_lo,
// support_hi]. dual_radius truncates the dual n-sum; an insufficient radius
// (tail terms still significant) raises an error with a suggested radius.
PoissonCheck poisson_check(i64 q, const std::function<cdbl(i64)>& char_fn,
                           const std::function<cdbl(double)>& test_fn,
                           double support_lo, double support_hi,
                           i64 dual_radius);

}  // namespace scslab
