#pragma once

// Complex gamma function via a Lanczos approximation (g = 7, 9 terms),
// reflected onto Re z >= 0.5. Accurate to ~1e-13 relative on the strips the
// contour integrals use; the test suite pins this against the recurrence
// and reflection identities.

#include <complex>

namespace scslab {

std::complex<double> gamma_complex(std::complex<double> z);
std::complex<double> log_gamma_complex(std::complex<double> z);

}  // namespace scslab
