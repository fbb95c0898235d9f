#include "gammafn.hpp"

#include <cmath>

namespace scslab {

namespace {

using cdbl = std::complex<double>;

constexpr double kPi = 3.141592653589793238462643383280;

// Lanczos g = 7, n = 9 (Godfrey's coefficients)
constexpr double kLanczos[9] = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

cdbl lanczos_positive(cdbl z) {
    // valid for Re z >= 0.5; z shifted down by 1 internally
    z -= 1.0;
    cdbl x = kLanczos[0];
    for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + double(i));
    cdbl t = z + 7.5;
    return std::sqrt(2.0 * kPi) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

}  // namespace

cdbl gamma_complex(cdbl z) {
    if (z.real() < 0.5) {
        // reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
        return kPi / (std::sin(kPi * z) * lanczos_positive(1.0 - z));
    }
    return lanczos_positive(z);
}

cdbl log_gamma_complex(cdbl z) { return std::log(gamma_complex(z)); }

}  // namespace scslab
