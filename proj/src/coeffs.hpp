#pragma once

// Fourier-coefficient tables: the triple divisor function d3 (Eisenstein
// proxy), the symmetric-square lift of the weight-12 discriminant form
// (cuspidal proxy, exact integer tau values), and the Hecke-relation
// machinery plus the size checks the analysis relies on.

#include <vector>

#include "modarith.hpp"

namespace scslab {

enum class CoeffSource { TripleDivisor, Sym2Delta, Custom };

struct CoefficientTable {
    CoeffSource source = CoeffSource::Custom;
    i64 n_max = 0;
    std::vector<double> a1n;                // 1-indexed; a1n[0] unused
    std::vector<double> lambda_gl2;         // tau(n)/n^{11/2} for Sym2Delta

    double at(i64 n) const {
        if (n < 1 || n > n_max) fail(ErrorCode::Usage, "CoefficientTable: index out of range");
        return a1n[std::size_t(n)];
    }
};

// d3(n) = #{(a,b,c) : a b c = n}, by a double divisor-convolution sieve.
CoefficientTable d3_table(i64 n_max);            // n_max <= 1e8

// Exact tau(n) through q prod (1 - q^n)^24 (integer arithmetic throughout).
std::vector<i128> tau_table(i64 n_max);          // n_max <= 1e6

// A(1,n) = sum_{d^2 m = n} lambda(m^2), lambda = tau / n^{11/2}; the prime
// power values come from the normalized Hecke recursion so only tau at
// primes <= n_max is consulted.
CoefficientTable sym2_coeffs(i64 n_max);

// All-ones table (separable test source).
CoefficientTable ones_table(i64 n_max);

CoefficientTable table_for(const std::string& source, i64 n_max);

// Hecke relation A(n1, n2) = sum_{d | (n1,n2)} mu(d) A(n1/d, 1) A(1, n2/d)
// for self-dual sources (A(k,1) = A(1,k)).
double hecke_A(i64 m, i64 n, const CoefficientTable& table);

struct SlopeFit {
    double slope = 0.0;
    double max_ratio = 0.0;  // max of partial sum / N^{1.05} over the fit nodes
    std::vector<std::pair<double, double>> nodes;  // (log N, log partial sum)
};

// Least-squares slope of log sum_{n<=N} |A(1,n)|^2 against log N over
// n_points dyadic values ending at table.n_max.
SlopeFit ramanujan_avg_check(const CoefficientTable& table, int n_points);

struct HeckeInequalityReport {
    double lhs = 0.0;    // sum_{n2 ~ N/n1^2} |A(n1,n2)|^2
    double rhs = 0.0;    // (N^{1.05}/n1^2) sum_{d|n1} |A(n1/d,1)|^2 / d
    double ratio = 0.0;
    bool ok = false;     // ratio <= calibrated constant
};

HeckeInequalityReport hecke_inequality_check(const CoefficientTable& table,
                                             i64 N, i64 n1);

}  // namespace scslab
