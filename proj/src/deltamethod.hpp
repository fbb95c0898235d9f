#pragma once

// Truncated Duke-Friedlander-Iwaniec delta symbol.
//
// Construction: w is a fixed bump on [1/2, 1], normalized so that
// M = sum_d w(d/C) plays the role of the unit mass. With
//   Delta_q(u) = sum_r (qr)^{-1} (w(qr/C)/M - w(|u|/(qr C))/M)
// the divisor-pairing identity gives, exactly for |n| well inside C^2,
//   delta(n) = sum_{q <= C} c_q(n) Delta_q(n).
// The weight g(q, x) is the Fourier transform of Delta_q(u) psi(u/C^2)
// (psi a smooth plateau equal to 1 on |v| <= 2), normalized so that
//   delta(n) = (1/C) sum_{q<=C} (1/q) sum*_a e(an/q)
//              * integral g(q,x) e(nx/(qC)) dx
// holds with the x-integral over R. delta_eval truncates the x-integral at
// x_cutoff and computes it by quadrature; the residual truncation error is
// what the reconstruction suite measures. delta_exact_truncated keeps the
// untransformed route as an oracle.

#include <vector>

#include "coeffs.hpp"
#include "window.hpp"

namespace scslab {

struct DeltaConfig {
    int q_param = 40;          // the conductor C
    double x_cutoff = 8.0;     // x-integral truncation
    double normalization = 1.0;  // fixed by enforcing delta_eval(0) = 1

    // internals (built once, immutable afterwards)
    double bump_mass = 0.0;              // M = sum_d w(d/C)
    std::vector<double> c_q;             // first piece of Delta_q, 1-indexed
    double grid_step_x = 0.0;
    std::vector<std::vector<double>> g_rows;  // g(q, x_i) for x_i = i*h, per q
    std::vector<double> kernel_step_t;        // per q: step of the G_q grid
    std::vector<std::vector<double>> kernels; // per q: G_q(t) samples
};

// Builds tables and calibrates the normalization. q_param >= 2.
DeltaConfig make_delta_config(int q_param, double x_cutoff = 0.0);

// g(q, x) for 1 <= q <= C, from the cached smooth kernels (any real x).
double g_weight(const DeltaConfig& cfg, int q, double x);

// integral over R of |g| + |g|^2 for one q (trapezoid over the cached row,
// plus the tail bound 2/x_cutoff from the |x|^{-2} envelope).
double g_integral_bound(const DeltaConfig& cfg, int q);

// (1/(C norm)) sum_{q<=C} (1/q) c_q(n) * integral_{|x|<=cut} g(q,x) e(nx/(qC)) dx
double delta_eval(const DeltaConfig& cfg, i64 n);

// Oracle route (no Fourier transform, no truncation in x):
// (1/norm0) sum_{q<=C} c_q(n) Delta_q(n) psi(n/C^2).
double delta_exact_truncated(const DeltaConfig& cfg, i64 n);

struct ScsViaDeltaResult {
    double value = 0.0;         // sum_{h,n,m} A(1,n) A(1,m) V V V delta_hat(m-n-h)
    double direct = 0.0;        // the same sum with the true Kronecker delta
    double error_budget = 0.0;  // sum |AAV| * max over needed args |dhat - d|
    double max_delta_err = 0.0;
};

// Reconstructs the shifted convolution sum through the delta expansion at
// desk scale; N <= 2000 budget guard.
ScsViaDeltaResult scs_via_delta(i64 N, i64 H, const CoefficientTable& table,
                                const DeltaConfig& cfg);

}  // namespace scslab
