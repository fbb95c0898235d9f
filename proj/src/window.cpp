#include "window.hpp"

#include <cmath>

namespace scslab {

namespace {

// Unit-interval bump on (0,1): exp(-1/(s(1-s))). Derivatives of
// phi(s) = -1/s - 1/(1-s) are exact:
//   phi^{(j)}(s) = -(-1)^j j!/s^{j+1} - j!/(1-s)^{j+1}
double phi_deriv(double s, int j) {
    double fact = 1.0;
    for (int i = 2; i <= j; ++i) fact *= i;
    double a = std::pow(s, double(j + 1));
    double b = std::pow(1.0 - s, double(j + 1));
    double sign = (j % 2 == 0) ? 1.0 : -1.0;
    return -sign * fact / a - fact / b;
}

// V^{(k)} on the unit interval via V' = phi' V:
//   V^{(k+1)} = sum_{i=0..k} C(k,i) phi^{(i+1)} V^{(k-i)}
double unit_bump_deriv(double s, int order) {
    if (s <= 0.0 || s >= 1.0) return 0.0;
    double e = -1.0 / (s * (1.0 - s));
    if (e < -700.0) return 0.0;  // underflow region, value and derivatives ~ 0
    std::array<double, SmoothWindow::kMaxDerivOrder + 1> v{};
    v[0] = std::exp(e);
    for (int k = 0; k < order; ++k) {
        double acc = 0.0;
        double binom = 1.0;
        for (int i = 0; i <= k; ++i) {
            acc += binom * phi_deriv(s, i + 1) * v[std::size_t(k - i)];
            binom = binom * double(k - i) / double(i + 1);
        }
        v[std::size_t(k + 1)] = acc;
    }
    return v[std::size_t(order)];
}

}  // namespace

SmoothWindow::SmoothWindow(double lo, double width) : lo_(lo), width_(width) {
    if (width <= 0.0) fail(ErrorCode::Usage, "SmoothWindow: width must be positive");
    for (int j = 0; j <= kMaxDerivOrder; ++j) {
        double m = 0.0;
        for (int i = 0; i <= 1000; ++i) {
            double t = lo_ + width_ * double(i) / 1000.0;
            m = std::max(m, std::abs(derivative(t, j)));
        }
        bounds_[std::size_t(j)] = m;
    }
}

double SmoothWindow::derivative(double t, int order) const {
    if (order < 0 || order > kMaxDerivOrder)
        fail(ErrorCode::Usage, "SmoothWindow: derivative order out of range");
    double s = (t - lo_) / width_;
    // chain rule for the affine rescale: d/dt = (1/width) d/ds
    return unit_bump_deriv(s, order) / std::pow(width_, double(order));
}

double SmoothWindow::plateau(double t, double plateau_end, double edge) {
    if (!(edge > plateau_end && plateau_end >= 0.0))
        fail(ErrorCode::Usage, "plateau: need edge > plateau_end >= 0");
    double a = std::abs(t);
    if (a <= plateau_end) return 1.0;
    if (a >= edge) return 0.0;
    // C-infinity step sigma(s) = f(s)/(f(s)+f(1-s)), f(s) = exp(-1/s)
    double s = (a - plateau_end) / (edge - plateau_end);
    double f1 = std::exp(-1.0 / s);
    double f2 = std::exp(-1.0 / (1.0 - s));
    return f2 / (f1 + f2);
}

}  // namespace scslab
