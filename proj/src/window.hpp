#pragma once

// The compactly supported bump used everywhere: V on [1,2] built from
// exp(-1/((t-1)(2-t))), with analytic derivatives up to order 8 through the
// Leibniz recursion on V' = phi' V, phi(t) = -1/(t-1) - 1/(2-t).

#include <array>

#include "common.hpp"

namespace scslab {

class SmoothWindow {
  public:
    static constexpr int kMaxDerivOrder = 8;

    // Bump supported on [lo, lo + width]; the canonical window is [1, 2].
    explicit SmoothWindow(double lo = 1.0, double width = 1.0);

    double lo() const { return lo_; }
    double hi() const { return lo_ + width_; }

    double operator()(double t) const { return derivative(t, 0); }
    double derivative(double t, int order) const;

    // max |V^{(j)}| sampled on a 10^3-point grid (cached at construction)
    double derivative_bound(int order) const { return bounds_[std::size_t(order)]; }

    // Smooth plateau: 1 on [-plateau, plateau], 0 outside [-edge, edge],
    // glued with the bump's normalized CDF. Used as the delta-method
    // mollifier and for Mellin test windows.
    static double plateau(double t, double plateau_end, double edge);

  private:
    double lo_;
    double width_;
    std::array<double, kMaxDerivOrder + 1> bounds_{};
};

}  // namespace scslab
