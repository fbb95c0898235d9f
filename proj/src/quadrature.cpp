#include "quadrature.hpp"

#include <cmath>

namespace scslab {

namespace {

using cdbl = std::complex<double>;

// Gauss-Kronrod 7/15 nodes and weights on [-1, 1].
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {0.129484966168870, 0.279705391489277,
                           0.381830050505119, 0.417959183673469};

struct Panel {
    cdbl kronrod;
    double err;
};

Panel gk15(const Integrand& f, double a, double b) {
    double c = 0.5 * (a + b), h = 0.5 * (b - a);
    cdbl fc = f(c);
    cdbl resk = kWgk[7] * fc;
    cdbl resg = kWg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        cdbl lo = f(c - h * kXgk[i]);
        cdbl hi = f(c + h * kXgk[i]);
        resk += kWgk[i] * (lo + hi);
        if (i % 2 == 1) resg += kWg[i / 2] * (lo + hi);
    }
    Panel p;
    p.kronrod = resk * h;
    double diff = std::abs(resk - resg) * std::abs(h);
    p.err = std::pow(200.0 * diff, 1.5);
    if (p.err > diff) p.err = diff;
    return p;
}

void gk_recurse(const Integrand& f, double a, double b, double tol, int depth,
                int max_depth, cdbl& acc, double& errc, std::size_t& panels) {
    Panel p = gk15(f, a, b);
    if (p.err <= tol || depth >= max_depth) {
        if (p.err > tol && depth >= max_depth)
            fail(ErrorCode::MaxDepth,
                 "quadrature: panel budget exhausted (oscillation too strong)");
        acc += p.kronrod;
        errc += p.err;
        ++panels;
        return;
    }
    double m = 0.5 * (a + b);
    gk_recurse(f, a, m, tol * 0.5, depth + 1, max_depth, acc, errc, panels);
    gk_recurse(f, m, b, tol * 0.5, depth + 1, max_depth, acc, errc, panels);
}

cdbl simpson(cdbl fa, cdbl fm, cdbl fb, double h) {
    return (fa + 4.0 * fm + fb) * (h / 6.0);
}

void simpson_recurse(const Integrand& f, double a, double b, cdbl fa, cdbl fm,
                     cdbl fb, cdbl whole, double tol, int depth, int max_depth,
                     cdbl& acc, double& errc, std::size_t& panels) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    cdbl flm = f(lm), frm = f(rm);
    cdbl left = simpson(fa, flm, fm, m - a);
    cdbl right = simpson(fm, frm, fb, b - m);
    double err = std::abs(left + right - whole) / 15.0;
    if (err <= tol || depth >= max_depth) {
        if (err > tol && depth >= max_depth)
            fail(ErrorCode::MaxDepth, "simpson: panel budget exhausted");
        acc += left + right + (left + right - whole) / 15.0;
        errc += err;
        ++panels;
        return;
    }
    simpson_recurse(f, a, m, fa, flm, fm, left, tol * 0.5, depth + 1, max_depth,
                    acc, errc, panels);
    simpson_recurse(f, m, b, fm, frm, fb, right, tol * 0.5, depth + 1, max_depth,
                    acc, errc, panels);
}

}  // namespace

QuadratureResult integrate_gk(const Integrand& f, double a, double b, double tol,
                              int max_depth) {
    QuadratureResult r;
    if (a == b) return r;
    double sign = 1.0;
    if (a > b) {
        std::swap(a, b);
        sign = -1.0;
    }
    cdbl acc{0.0, 0.0};
    double errc = 0.0;
    std::size_t panels = 0;
    // seed with a few panels so a phase that averages out over the whole
    // interval cannot fool the top-level error estimate
    const int seed = 8;
    for (int i = 0; i < seed; ++i) {
        double lo = a + (b - a) * double(i) / seed;
        double hi = a + (b - a) * double(i + 1) / seed;
        gk_recurse(f, lo, hi, tol / seed, 0, max_depth, acc, errc, panels);
    }
    r.value = sign * acc;
    r.error_estimate = errc;
    r.panels = panels;
    return r;
}

QuadratureResult integrate_simpson(const Integrand& f, double a, double b,
                                   double tol, int max_depth) {
    QuadratureResult r;
    if (a == b) return r;
    double sign = 1.0;
    if (a > b) {
        std::swap(a, b);
        sign = -1.0;
    }
    cdbl acc{0.0, 0.0};
    double errc = 0.0;
    std::size_t panels = 0;
    const int seed = 8;
    for (int i = 0; i < seed; ++i) {
        double lo = a + (b - a) * double(i) / seed;
        double hi = a + (b - a) * double(i + 1) / seed;
        double m = 0.5 * (lo + hi);
        cdbl fa = f(lo), fm = f(m), fb = f(hi);
        cdbl whole = simpson(fa, fm, fb, hi - lo);
        simpson_recurse(f, lo, hi, fa, fm, fb, whole, tol / seed, 0, max_depth,
                        acc, errc, panels);
    }
    r.value = sign * acc;
    r.error_estimate = errc;
    r.panels = panels;
    return r;
}

}  // namespace scslab
