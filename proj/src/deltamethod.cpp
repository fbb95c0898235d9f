#include "deltamethod.hpp"

#include <cmath>

#include "expsums.hpp"
#include "oscint.hpp"
#include "quadrature.hpp"

namespace scslab {

namespace {

constexpr double kPi = 3.141592653589793238462643383280;
constexpr double kTwoPi = 2.0 * kPi;
constexpr double kPsiPlateau = 2.0;  // psi = 1 on |v| <= 2, 0 beyond |v| >= 4
constexpr double kPsiEdge = 4.0;

const SmoothWindow& wbump() {
    static const SmoothWindow w(0.5, 0.5);  // supported on [1/2, 1]
    return w;
}

double psi(double v) { return SmoothWindow::plateau(v, kPsiPlateau, kPsiEdge); }

// Plateau part of the transform of psi: integral psi(v) cos(2 pi xi v) dv,
// with the flat piece done in closed form and the transition by quadrature.
double psi_cosine_transform(double xi) {
    double flat;
    if (std::abs(xi) < 1e-12)
        flat = 2.0 * kPsiPlateau;
    else
        flat = std::sin(kTwoPi * xi * kPsiPlateau) / (kPi * xi);
    Integrand f = [&](double v) { return cdbl(psi(v) * std::cos(kTwoPi * xi * v), 0.0); };
    double band = integrate_gk(f, kPsiPlateau, kPsiEdge, 1e-12).value.real();
    return flat + 2.0 * band;
}

using cdbl = std::complex<double>;

}  // namespace

DeltaConfig make_delta_config(int q_param, double x_cutoff) {
    if (q_param < 2) fail(ErrorCode::Usage, "delta: q_param must be >= 2");
    if (q_param > 512) fail(ErrorCode::Budget, "delta: q_param above desk-scale cap");
    DeltaConfig cfg;
    cfg.q_param = q_param;
    const double C = double(q_param);
    // support of g grows like C^{eps}; the truncation point follows suit
    cfg.x_cutoff = x_cutoff > 0.0 ? x_cutoff : 8.0 * std::pow(C / 20.0, 0.3);

    const SmoothWindow& w = wbump();
    cfg.bump_mass = 0.0;
    for (int d = 1; d <= q_param; ++d) cfg.bump_mass += w(double(d) / C);
    if (cfg.bump_mass <= 0.0) fail(ErrorCode::Internal, "delta: empty bump mass");

    cfg.c_q.assign(std::size_t(q_param) + 1, 0.0);
    for (int q = 1; q <= q_param; ++q) {
        double acc = 0.0;
        for (int r = 1; i64(q) * r <= q_param; ++r)
            acc += w(double(q) * r / C) / (double(q) * r * cfg.bump_mass);
        cfg.c_q[std::size_t(q)] = acc;
    }

    // Smooth kernels G_q(t) = psi(q t / C) sum_{t <= r <= 2t} w(t/r) / r,
    // so that the oscillatory piece of g is (2C/M) int cos(2 pi x t) G_q(t) dt.
    cfg.kernels.resize(std::size_t(q_param) + 1);
    cfg.kernel_step_t.assign(std::size_t(q_param) + 1, 0.0);
    for (int q = 1; q <= q_param; ++q) {
        double t_max = kPsiEdge * C / double(q) + 1.0;
        double step = 1.0 / 128.0;
        std::size_t npts = std::size_t(t_max / step) + 1;
        std::vector<double> G(npts, 0.0);
        for (std::size_t i = 0; i < npts; ++i) {
            double t = step * double(i);
            double p = psi(double(q) * t / C);
            if (p == 0.0 || t < 0.5) continue;
            double acc = 0.0;
            int rlo = int(std::ceil(t));
            int rhi = int(std::floor(2.0 * t));
            for (int r = std::max(1, rlo); r <= rhi; ++r)
                acc += w(t / double(r)) / double(r);
            G[i] = p * acc;
        }
        cfg.kernels[std::size_t(q)] = std::move(G);
        cfg.kernel_step_t[std::size_t(q)] = step;
    }

    // cache g on the x-grid used by the quadrature in delta_eval
    cfg.grid_step_x = 1.0 / 256.0;
    std::size_t nx = std::size_t(cfg.x_cutoff / cfg.grid_step_x) + 1;
    cfg.g_rows.resize(std::size_t(q_param) + 1);
    for (int q = 1; q <= q_param; ++q) {
        auto& row = cfg.g_rows[std::size_t(q)];
        row.resize(nx);
        for (std::size_t i = 0; i < nx; ++i)
            row[i] = g_weight(cfg, q, cfg.grid_step_x * double(i));
    }

    // normalization: force delta_eval(0) = 1
    cfg.normalization = 1.0;
    double raw = delta_eval(cfg, 0);
    if (!(raw > 0.1))
        fail(ErrorCode::Internal, "delta: calibration found a degenerate mass");
    cfg.normalization = raw;
    return cfg;
}

double g_weight(const DeltaConfig& cfg, int q, double x) {
    if (q < 1 || q > cfg.q_param) fail(ErrorCode::Usage, "g_weight: q out of range");
    const double C = double(cfg.q_param);
    double first = cfg.c_q[std::size_t(q)] * C * C *
                   psi_cosine_transform(x * C / double(q));
    // composite Simpson over the cached smooth kernel
    const auto& G = cfg.kernels[std::size_t(q)];
    double h = cfg.kernel_step_t[std::size_t(q)];
    double acc = 0.0;
    std::size_t n = G.size();
    for (std::size_t i = 0; i < n; ++i) {
        double wgt = (i == 0 || i == n - 1) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        acc += wgt * G[i] * std::cos(kTwoPi * x * h * double(i));
    }
    acc *= h / 3.0;
    double second = (2.0 * C / cfg.bump_mass) * acc;
    return first - second;
}

double g_integral_bound(const DeltaConfig& cfg, int q) {
    const auto& row = cfg.g_rows[std::size_t(q)];
    double h = cfg.grid_step_x;
    double acc = 0.0;
    for (std::size_t i = 0; i < row.size(); ++i) {
        double wgt = (i == 0 || i + 1 == row.size()) ? 0.5 : 1.0;
        acc += wgt * (std::abs(row[i]) + row[i] * row[i]);
    }
    acc *= 2.0 * h;             // even in x
    acc += 2.0 * 2.0 / cfg.x_cutoff;  // |g| <= 2 x^{-2} envelope past the cutoff
    return acc;
}

double delta_eval(const DeltaConfig& cfg, i64 n) {
    const double C = double(cfg.q_param);
    double total = 0.0;
    for (int q = 1; q <= cfg.q_param; ++q) {
        i64 cq = ramanujan_divisor_formula(n, q);
        if (cq == 0) continue;
        const auto& row = cfg.g_rows[std::size_t(q)];
        double h = cfg.grid_step_x;
        double freq = kTwoPi * double(n) / (double(q) * C);
        // simpson over [0, cut], doubled (g and the character are even in x)
        double acc = 0.0;
        std::size_t npts = row.size();
        for (std::size_t i = 0; i < npts; ++i) {
            double wgt = (i == 0 || i + 1 == npts) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
            acc += wgt * row[i] * std::cos(freq * h * double(i));
        }
        double integral = 2.0 * acc * h / 3.0;
        total += double(cq) / double(q) * integral;
    }
    return total / (C * cfg.normalization);
}

double delta_exact_truncated(const DeltaConfig& cfg, i64 n) {
    const double C = double(cfg.q_param);
    const SmoothWindow& w = wbump();
    double total = 0.0;
    double u = std::abs(double(n));
    for (int q = 1; q <= cfg.q_param; ++q) {
        i64 cq = ramanujan_divisor_formula(n, q);
        if (cq == 0) continue;
        double dq = cfg.c_q[std::size_t(q)];
        // second piece: sum_r w(|n|/(q r C)) / (q r M)
        if (n != 0) {
            for (i64 r = std::max<i64>(1, i64(u / (double(q) * C)) - 1);; ++r) {
                double arg = u / (double(q) * double(r) * C);
                if (arg < 0.5) break;
                if (arg <= 1.0)
                    dq -= w(arg) / (double(q) * double(r) * cfg.bump_mass);
            }
        }
        total += double(cq) * dq * psi(double(n) / (C * C));
    }
    return total;
}

ScsViaDeltaResult scs_via_delta(i64 N, i64 H, const CoefficientTable& table,
                                const DeltaConfig& cfg) {
    if (N > 2000) fail(ErrorCode::Budget, "scs_via_delta: N above desk-scale cap");
    if (table.n_max < 2 * N + 2 * H)
        fail(ErrorCode::Usage, "scs_via_delta: table too short (need 2N + 2H)");
    const SmoothWindow& V = standard_window();
    ScsViaDeltaResult out;

    // delta_hat on every argument m - n - h that can appear
    i64 lo = N - 2 * N - 2 * H, hi = 2 * N - N - H;
    std::vector<double> dhat(std::size_t(hi - lo + 1));
    for (i64 a = lo; a <= hi; ++a) {
        double d = delta_eval(cfg, a);
        dhat[std::size_t(a - lo)] = d;
        double truth = a == 0 ? 1.0 : 0.0;
        out.max_delta_err = std::max(out.max_delta_err, std::abs(d - truth));
    }

    Kahan via, direct, budget;
    for (i64 h = H; h <= 2 * H; ++h) {
        double vh = V(double(h) / double(H));
        if (vh == 0.0) continue;
        for (i64 n = N; n <= 2 * N; ++n) {
            double vn = V(double(n) / double(N));
            if (vn == 0.0) continue;
            double an = table.at(n);
            for (i64 m = N; m <= 2 * N; ++m) {
                double vm = V(double(m) / double(N));
                if (vm == 0.0) continue;
                double term = an * table.at(m) * vn * vm * vh;
                i64 arg = m - n - h;
                via.add(term * dhat[std::size_t(arg - lo)]);
                if (arg == 0) direct.add(term);
                budget.add(std::abs(term));
            }
        }
    }
    out.value = via.value();
    out.direct = direct.value();
    out.error_budget = budget.value() * out.max_delta_err;
    return out;
}

}  // namespace scslab
