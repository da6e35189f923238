#include "conebranch/numerics/gamma.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "conebranch/error.hpp"

namespace conebranch::numerics {

namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczosCoeffs = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7,
};

void require_finite(Complex z, const char* where) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw InvalidArgument(std::string(where) + ": non-finite argument");
  }
}

// Re z >= 1/2.
Complex lanczos_log_gamma(Complex z) {
  const Complex zm1 = z - 1.0;
  Complex series = kLanczosCoeffs[0];
  for (std::size_t k = 1; k < kLanczosCoeffs.size(); ++k) {
    series += kLanczosCoeffs[k] / (zm1 + static_cast<double>(k));
  }
  const Complex t = zm1 + kLanczosG + 0.5;
  const double half_log_two_pi = 0.5 * std::log(2.0 * std::numbers::pi);
  return half_log_two_pi + (zm1 + 0.5) * std::log(t) - t + std::log(series);
}

}  // namespace

bool is_gamma_pole(Complex z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

Complex log_gamma(Complex z) {
  require_finite(z, "log_gamma");
  if (is_gamma_pole(z)) {
    throw PoleError("log_gamma: pole of Gamma at z = " + std::to_string(z.real()));
  }
  if (z.real() >= 0.5) {
    return lanczos_log_gamma(z);
  }
  // Upward shift; every log(z + k) is principal and the sum stays on the
  // branch of the slit plane.
  const int shift = static_cast<int>(std::ceil(0.5 - z.real()));
  Complex correction = 0.0;
  for (int k = 0; k < shift; ++k) {
    correction += std::log(z + static_cast<double>(k));
  }
  return lanczos_log_gamma(z + static_cast<double>(shift)) - correction;
}

Complex checked_exp(Complex w) {
  if (w.real() > std::log(std::numeric_limits<double>::max())) {
    throw OverflowError("exponent " + std::to_string(w.real()) + " overflows double");
  }
  return std::exp(w);
}

Complex gamma(Complex z) { return checked_exp(log_gamma(z)); }

Complex log_beta(Complex a, Complex b) {
  return log_gamma(a) + log_gamma(b) - log_gamma(a + b);
}

Complex beta(Complex a, Complex b) { return checked_exp(log_beta(a, b)); }

Complex pochhammer(Complex t, int k) {
  if (k < 0) {
    throw InvalidArgument("pochhammer: k must be non-negative");
  }
  Complex product = 1.0;
  for (int j = 0; j < k; ++j) {
    product *= t + static_cast<double>(j);
  }
  return product;
}

}  // namespace conebranch::numerics
