#include "scsexp.hpp"

#include <cmath>

#include "quadrature.hpp"

namespace scslab {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

void check_budget(const ScsParams& p, const CoefficientTable& table) {
    if (p.N < 1 || p.H < 1) fail(ErrorCode::Usage, "scs: N, H must be >= 1");
    if (p.H > p.N) fail(ErrorCode::Usage, "scs: need H <= N");
    if (i128(p.N) * p.H > i128(1000000000))
        fail(ErrorCode::Budget, "scs: N*H above the 1e9 term budget");
    if (table.n_max < 2 * p.N + 2 * p.H)
        fail(ErrorCode::Usage, "scs: table too short (need 2N + 2H)");
}

}  // namespace

double scs_direct(const ScsParams& p, const CoefficientTable& table) {
    check_budget(p, table);
    const SmoothWindow& V = standard_window();
    std::size_t stripes = std::size_t(p.H) + 1;  // h in [H, 2H]
    std::vector<double> partial(stripes, 0.0);
    parallel_blocks(stripes, [&](std::size_t lo, std::size_t hi, std::size_t) {
        for (std::size_t s = lo; s < hi; ++s) {
            i64 h = p.H + i64(s);
            double vh = V(double(h) / double(p.H));
            if (vh == 0.0) continue;
            Kahan acc;
            for (i64 n = p.N; n <= 2 * p.N; ++n) {
                double vn = V(double(n) / double(p.N));
                if (vn == 0.0) continue;
                acc.add(table.at(n) * table.at(n + h) * vn);
            }
            partial[s] = vh * acc.value();
        }
    });
    Kahan total;  // merged in stripe order, independent of the thread count
    for (double v : partial) total.add(v);
    return total.value();
}

double scs_direct_oracle(const ScsParams& p, const CoefficientTable& table) {
    check_budget(p, table);
    const SmoothWindow& V = standard_window();
    Kahan acc;
    for (i64 n = p.N; n <= 2 * p.N; ++n) {
        double vn = V(double(n) / double(p.N));
        if (vn == 0.0) continue;
        double an = table.at(n);
        for (i64 h = p.H; h <= 2 * p.H; ++h) {
            double vh = V(double(h) / double(p.H));
            if (vh == 0.0) continue;
            acc.add(an * table.at(n + h) * vn * vh);
        }
    }
    return acc.value();
}

double theorem_envelope(double N, double H) {
    return std::pow(N, 0.25) * std::pow(H, 2.5) +
           std::pow(H, 0.625) * std::pow(N, 17.0 / 16.0) +
           std::pow(N, 9.0 / 8.0) * std::pow(H, 0.25);
}

std::vector<ScanRow> scan(const std::vector<std::pair<i64, i64>>& grid,
                          const CoefficientTable& table) {
    std::vector<ScanRow> rows;
    for (auto [N, H] : grid) {
        ScanRow r;
        r.N = N;
        r.H = H;
        r.K = std::sqrt(double(N)) / double(H);
        ScsParams p{N, H, r.K};
        r.s_prime = scs_direct(p, table);
        r.trivial_bound = double(N) * double(H);
        r.theorem_envelope = theorem_envelope(double(N), double(H));
        r.ratio_trivial = r.s_prime / r.trivial_bound;
        r.ratio_envelope = r.s_prime / r.theorem_envelope;
        rows.push_back(r);
    }
    return rows;
}

ExponentFit exponent_fit(const std::vector<ScanRow>& rows) {
    ExponentFit fit;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (const ScanRow& r : rows) {
        if (r.s_prime == 0.0) {
            ++fit.dropped;
            continue;
        }
        double x = std::log(double(r.N));
        double y = std::log(std::abs(r.s_prime));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n < 3) fail(ErrorCode::Usage, "exponent_fit: need >= 3 usable rows");
    fit.slope = (double(n) * sxy - sx * sy) / (double(n) * sxx - sx * sx);
    return fit;
}

PoissonCheck poisson_check(i64 q, const std::function<cdbl(i64)>& char_fn,
                           const std::function<cdbl(double)>& test_fn,
                           double support_lo, double support_hi,
                           i64 dual_radius) {
    if (q < 1) fail(ErrorCode::Usage, "poisson_check: q must be >= 1");
    if (dual_radius < 1) fail(ErrorCode::Usage, "poisson_check: dual_radius >= 1");

    PoissonCheck out;
    cdbl lhs(0.0, 0.0);
    for (i64 n = i64(std::floor(support_lo)) - 1; n <= i64(std::ceil(support_hi)) + 1;
         ++n)
        lhs += char_fn(n) * test_fn(double(n));
    out.lhs = lhs;

    // fhat(t) = integral f(y) e(-t y) dy over the support
    auto fhat = [&](double t) {
        Integrand g = [&](double y) {
            double ph = -kTwoPi * t * y;
            return test_fn(y) * cdbl(std::cos(ph), std::sin(ph));
        };
        return integrate_gk(g, support_lo, support_hi, 1e-12).value;
    };

    cdbl rhs(0.0, 0.0);
    double tail = 0.0;
    for (i64 n = -dual_radius; n <= dual_radius; ++n) {
        cdbl bsum(0.0, 0.0);
        for (i64 b = 0; b < q; ++b) {
            double ph = kTwoPi * double(mod_canonical(i128(n) * b, q)) / double(q);
            bsum += char_fn(b) * cdbl(std::cos(ph), std::sin(ph));
        }
        cdbl term = bsum * fhat(double(n) / double(q));
        rhs += term;
        if (std::llabs(n) >= dual_radius - 2) tail = std::max(tail, std::abs(term));
    }
    rhs /= double(q);
    if (tail > 1e-11)
        fail(ErrorCode::Domain,
             "poisson_check: dual sum not converged at the given radius; try "
             "radius >= " + std::to_string(4 * dual_radius));
    out.rhs = rhs;
    out.diff = std::abs(out.lhs - out.rhs);
    return out;
}

}  // namespace scslab
