#pragma once

// Adaptive quadrature over finite intervals for complex-valued integrands.
// The primary rule is Gauss-Kronrod 7/15 with recursive bisection; an
// independent adaptive Simpson rule backs the self-consistency checks.

#include <complex>
#include <functional>

#include "common.hpp"

namespace scslab {

using Integrand = std::function<std::complex<double>(double)>;

struct QuadratureResult {
    std::complex<double> value;
    double error_estimate = 0.0;
    std::size_t panels = 0;
};

// Throws MaxDepth when the requested tolerance cannot be met within the
// panel budget (heavily oscillatory phases past the depth limit).
QuadratureResult integrate_gk(const Integrand& f, double a, double b,
                              double tol = 1e-10, int max_depth = 48);

// Independent cross-check rule.
QuadratureResult integrate_simpson(const Integrand& f, double a, double b,
                                   double tol = 1e-10, int max_depth = 52);

inline std::complex<double> quadrature(const Integrand& f, double a, double b,
                                       double tol = 1e-10) {
    if (tol < 1e-14) fail(ErrorCode::Usage, "quadrature: tolerance too small");
    return integrate_gk(f, a, b, tol).value;
}

}  // namespace scslab
