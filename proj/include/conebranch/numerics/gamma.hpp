#pragma once

#include <complex>

namespace conebranch {

using Complex = std::complex<double>;

namespace numerics {

/// Principal branch of log Gamma(z): the analytic continuation of the real
/// log-Gamma from the positive axis, cut along the non-positive reals.
///
/// Lanczos approximation (g = 7, 9 terms) for Re z >= 1/2; smaller real parts
/// are shifted up with the recurrence Gamma(z) = Gamma(z + m) / z(z+1)...(z+m-1),
/// which keeps the branch without a 2*pi*i correction.
/// Throws PoleError at z = 0, -1, -2, ...
Complex log_gamma(Complex z);

/// True at z = 0, -1, -2, ...
bool is_gamma_pole(Complex z);

/// Gamma(z) = exp(log_gamma(z)); OverflowError if the modulus exceeds DBL_MAX.
Complex gamma(Complex z);

/// log Beta(a, b) = log Gamma(a) + log Gamma(b) - log Gamma(a + b).
Complex log_beta(Complex a, Complex b);

/// Beta(a, b) = Gamma(a) Gamma(b) / Gamma(a + b), exponentiated once.
Complex beta(Complex a, Complex b);

/// Rising factorial (t)_k = t (t+1) ... (t+k-1), (t)_0 = 1, by direct product.
Complex pochhammer(Complex t, int k);

/// exp(w) with an OverflowError instead of a silent infinity.
Complex checked_exp(Complex w);

}  // namespace numerics
}  // namespace conebranch
