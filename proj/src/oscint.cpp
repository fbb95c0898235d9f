#include "oscint.hpp"

#include <cmath>

#include "gammafn.hpp"

namespace scslab {

namespace {

constexpr double kPi = 3.141592653589793238462643383280;
constexpr double kTwoPi = 2.0 * kPi;

cdbl unit_phase(double t) { return {std::cos(kTwoPi * t), std::sin(kTwoPi * t)}; }

// Decay-certificate constants, fixed by a calibration run over the standard
// window family (max over theta in [1e2, 1e5] of |I| theta^{j - 0.01}, with
// 4x headroom) and frozen.
constexpr double kDecayConst[4] = {0.0, 0.6, 0.6, 1.2};

// First-correction scale constant for the stationary phase error estimate,
// calibrated on the same family and frozen.
constexpr double kStationaryConst = 0.12;

}  // namespace

cdbl osc_quadrature(const OscIntegrand& itg, double tol) {
    Integrand f = [&](double x) { return itg.amplitude(x) * unit_phase(itg.phase.value(x)); };
    return integrate_gk(f, itg.a, itg.b, tol).value;
}

DecayCertificate nonstationary_decay(const OscIntegrand& itg, int j) {
    if (j < 1 || j > 3) fail(ErrorCode::Usage, "nonstationary_decay: j in 1..3");
    if (!(itg.theta_f > 0.0))
        fail(ErrorCode::Usage, "nonstationary_decay: theta_f must be positive");
    const int grid = 1000;
    for (int i = 0; i <= grid; ++i) {
        double x = itg.a + (itg.b - itg.a) * double(i) / grid;
        if (std::abs(itg.phase.d1(x)) < itg.theta_f)
            fail(ErrorCode::Domain,
                 "nonstationary_decay: |f'| dips below theta_f on the support");
    }
    DecayCertificate c;
    c.observed = std::abs(osc_quadrature(itg, 1e-12));
    c.bound = kDecayConst[j] * std::pow(itg.theta_f, -double(j) + 0.01);
    return c;
}

StationaryResult stationary_leading(const OscIntegrand& itg) {
    const int grid = 2000;
    double x0 = 0.0;
    int found = 0;
    double prev_x = itg.a;
    double prev = itg.phase.d1(prev_x);
    for (int i = 1; i <= grid; ++i) {
        double x = itg.a + (itg.b - itg.a) * double(i) / grid;
        double cur = itg.phase.d1(x);
        if (prev == 0.0 || (prev < 0.0) != (cur < 0.0)) {
            // bisect the bracket
            double lo = prev_x, hi = x, flo = prev;
            for (int it = 0; it < 100; ++it) {
                double mid = 0.5 * (lo + hi);
                double fm = itg.phase.d1(mid);
                if ((fm < 0.0) == (flo < 0.0)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            x0 = 0.5 * (lo + hi);
            ++found;
        }
        prev = cur;
        prev_x = x;
    }
    if (found == 0)
        fail(ErrorCode::Domain,
             "stationary_leading: no stationary point in the interval "
             "(use nonstationary_decay)");
    if (found > 1)
        fail(ErrorCode::Domain, "stationary_leading: multiple stationary points");

    double fpp = itg.phase.d2(x0);
    if (fpp == 0.0)
        fail(ErrorCode::Domain, "stationary_leading: degenerate stationary point");

    // size conditions on the hints (delta = 1/20)
    double L = itg.b - itg.a;
    double Z = itg.omega_f + itg.theta_f + itg.theta_g + L + 1.0;
    double delta = 0.05;
    if (!(itg.theta_f >= std::pow(Z, 3.0 * delta)))
        fail(ErrorCode::Domain, "stationary_leading: theta_f below Z^{3 delta}");
    if (!(L >= itg.omega_g &&
          itg.omega_g >= itg.omega_f * std::pow(Z, delta / 2.0) /
                             std::sqrt(itg.theta_f)))
        fail(ErrorCode::Domain, "stationary_leading: omega_g out of range");

    StationaryResult r;
    r.x0 = x0;
    double rot = fpp > 0.0 ? 0.125 : -0.125;  // e^{+- i pi/4}
    r.leading_term = unit_phase(rot) * itg.amplitude(x0) *
                     unit_phase(itg.phase.value(x0)) / std::sqrt(std::abs(fpp));
    r.error_estimate = kStationaryConst * itg.theta_g *
                       (itg.omega_f * itg.omega_f) /
                       (itg.omega_g * itg.omega_g * itg.theta_f) /
                       std::sqrt(itg.theta_f);
    r.value = osc_quadrature(itg, 1e-11);
    return r;
}

const SmoothWindow& standard_window() {
    static const SmoothWindow w(1.0, 1.0);
    return w;
}

double standard_window_integral() {
    // frozen after computing with both panel rules (they agree to 1e-12)
    return 0.0070029751855110955;
}

ImEval i_m_eval(double x, double q, double m1sq_m2, double N, double C_mod,
                int sign) {
    if (x <= 0.0 || q <= 0.0 || m1sq_m2 <= 0.0 || N <= 0.0 || C_mod <= 0.0)
        fail(ErrorCode::Usage, "i_m_eval: parameters must be positive");
    if (sign != 1 && sign != -1) fail(ErrorCode::Usage, "i_m_eval: sign is +-1");

    double a = x * N / (q * C_mod);
    double b = std::cbrt(m1sq_m2 * N) / q;
    const SmoothWindow& V = standard_window();

    OscIntegrand itg;
    itg.a = 1.0;
    itg.b = 2.0;
    itg.amplitude = [&V](double y) { return cdbl(V(y), 0.0); };
    double s = double(sign);
    itg.phase.value = [=](double y) { return a * y + s * 3.0 * b * std::cbrt(y); };
    itg.phase.d1 = [=](double y) { return a + s * b * std::pow(y, -2.0 / 3.0); };
    itg.phase.d2 = [=](double y) {
        return -s * (2.0 / 3.0) * b * std::pow(y, -5.0 / 3.0);
    };
    itg.theta_f = a;
    itg.omega_f = 1.0;
    itg.theta_g = 1.0;
    itg.omega_g = 1.0;

    ImEval r;
    r.window_arg = m1sq_m2 / (x * x * x * N * N / (C_mod * C_mod * C_mod));
    r.quad = osc_quadrature(itg, 1e-11);
    if (sign > 0) {
        // f' = a + b y^{-2/3} >= a: no stationary point, certified small
        r.decay = nonstationary_decay(itg, 3);
        r.value = cdbl(0.0, 0.0);
    } else {
        r.stationary = stationary_leading(itg);
        r.value = r.stationary->leading_term;
    }
    return r;
}

cdbl psi0_asymptotic(double x, double X, int j_max) {
    if (x * X < 1.0)
        fail(ErrorCode::Domain, "psi0_asymptotic: outside the regime x X >= 1");
    if (j_max < 1 || j_max > 4)
        fail(ErrorCode::Usage, "psi0_asymptotic: j_max in 1..4");
    // c_1 = 0, d_1 = -2/sqrt(3 pi). The j >= 2 constants depend on
    // archimedean data this suite does not model; the same scale-1 pair is
    // used so the truncation comparison measures the (pi^3 x y)^{-j/3} damping.
    const double d1 = -2.0 / std::sqrt(3.0 * kPi);
    const SmoothWindow psi(X, X);
    Integrand f = [&](double y) {
        double osc = 6.0 * kPi * std::cbrt(x) * std::cbrt(y);
        double acc = 0.0;
        for (int j = 1; j <= j_max; ++j) {
            double cj = 0.0, dj = d1;
            acc += (cj * std::cos(osc) + dj * std::sin(osc)) /
                   std::pow(kPi * kPi * kPi * x * y, double(j) / 3.0);
        }
        return cdbl(psi(y) * acc, 0.0);
    };
    cdbl integral = integrate_gk(f, X, 2.0 * X, 1e-11).value;
    return cdbl(0.0, 2.0 * std::pow(kPi, 4.0) * x) * integral;
}

MellinBarnesResult mellin_barnes_split(double a, double b, double A, double B,
                                       double Z, double T0, double grid_step,
                                       double c1, double c2) {
    if (!(a < 0.0)) fail(ErrorCode::Usage, "mellin_barnes_split: need a < 0");
    if (!(A > 0.0 && B > 0.0 && Z > 0.0))
        fail(ErrorCode::Usage, "mellin_barnes_split: A, B, Z must be positive");
    if (T0 < 30.0) fail(ErrorCode::Usage, "mellin_barnes_split: T0 >= 30");
    if (grid_step > 0.05) grid_step = 0.05;

    if (c1 <= 0.0) c1 = 1.2;
    if (c2 <= 0.0) {
        // all poles of Gamma(a s - b + z) must stay left of the contour
        double ladder_top = b - a * c1;
        c2 = std::max(1.5, ladder_top + 0.5);
        while (std::abs(c2 - std::round(c2)) < 0.15) c2 += 0.17;
    }

    // pole-proximity checks at the contour midline
    auto check = [](double re_arg, const char* which) {
        if (re_arg <= 0.1 && std::abs(re_arg - std::round(re_arg)) < 0.1)
            fail(ErrorCode::Domain,
                 std::string("mellin_barnes_split: Gamma argument ") + which +
                     " within 0.1 of a pole; choose different c1, c2");
    };
    check(a * c1 - b + c2, "a s - b + z");
    check(-c2, "-z");
    if (c2 < b - a * c1 + 0.1)
        fail(ErrorCode::Domain,
             "mellin_barnes_split: contour does not separate the gamma ladders; "
             "raise c2 above b - a c1");

    const SmoothWindow& V = standard_window();

    // Mellin transform of V along Re s = c1, one row per t1 node
    auto vhat = [&](cdbl s) {
        Integrand f = [&](double t) {
            return std::pow(cdbl(t, 0.0), s - 1.0) * V(t);
        };
        return integrate_gk(f, V.lo(), V.hi(), 1e-12).value;
    };

    std::size_t n = std::size_t(std::floor(2.0 * T0 / grid_step)) + 1;
    std::vector<cdbl> row1(n), pre1(n);
    for (std::size_t i = 0; i < n; ++i) {
        double t1 = -T0 + grid_step * double(i);
        cdbl s(c1, t1);
        row1[i] = vhat(s);
        // V^(s) Z^{-s} B^{b - a s} / Gamma(a s - b)
        pre1[i] = row1[i] * std::pow(cdbl(Z, 0.0), -s) *
                  std::pow(cdbl(B, 0.0), b - a * s) /
                  gamma_complex(a * s - b);
    }
    std::vector<cdbl> pre2(n);
    for (std::size_t i = 0; i < n; ++i) {
        double t2 = -T0 + grid_step * double(i);
        cdbl z(c2, t2);
        pre2[i] = gamma_complex(-z) * std::pow(cdbl(A / B, 0.0), z);
    }

    cdbl acc(0.0, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double t1 = -T0 + grid_step * double(i);
        cdbl s(c1, t1);
        double w1 = (i == 0 || i == n - 1) ? 0.5 : 1.0;
        cdbl inner(0.0, 0.0);
        for (std::size_t k = 0; k < n; ++k) {
            double t2 = -T0 + grid_step * double(k);
            cdbl z(c2, t2);
            double w2 = (k == 0 || k == n - 1) ? 0.5 : 1.0;
            inner += w2 * pre2[k] * gamma_complex(a * s - b + z);
        }
        acc += w1 * pre1[i] * inner;
    }
    acc *= grid_step * grid_step / (4.0 * kPi * kPi);

    MellinBarnesResult r;
    r.contour = acc;
    double chi = A + B;
    r.direct = std::pow(chi, b) * V(std::pow(chi, a) * Z);
    r.c1 = c1;
    r.c2 = c2;
    return r;
}

LinearizeResult x_integral_linearize(const LinearizeParams& p) {
    if (p.nn <= 0.0 || p.mm <= 0.0 || p.q <= 0.0 || p.X <= 0.0 || p.C <= 0.0)
        fail(ErrorCode::Usage, "x_integral_linearize: parameters must be positive");
    const SmoothWindow& V0 = standard_window();
    double rn = std::sqrt(p.nn), rm = std::sqrt(p.mm);
    double coef = 2.0 * std::sqrt(p.C) * (rn - rm) / p.q;

    Integrand lhs_f = [&](double x) {
        return unit_phase(coef / std::sqrt(x)) * V0(x / p.X);
    };
    cdbl lhs = integrate_gk(lhs_f, p.X, 2.0 * p.X, 1e-11).value;

    double Y = 2.0 * std::sqrt(p.C) / (p.q * std::sqrt(p.X) * (rn + rm));
    double diff = p.nn - p.mm;
    Integrand rhs_f = [&](double y) {
        return unit_phase(y * diff) * std::pow(y, -3.0) * V0(Y * Y / (y * y));
    };
    cdbl rhs = 2.0 * Y * Y * p.X *
               integrate_gk(rhs_f, Y / std::sqrt(2.0), Y, 1e-11).value;

    LinearizeResult r;
    r.lhs = lhs;
    r.rhs = rhs;
    r.Y = Y;
    r.Y0 = p.C * p.C / (p.Q * p.X * p.X * p.N);
    return r;
}

}  // namespace scslab
