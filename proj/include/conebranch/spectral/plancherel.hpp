#pragma once

#include <functional>
#include <iosfwd>
#include <vector>

#include "conebranch/spectral/transform.hpp"

namespace conebranch::spectral {

struct GridSpec {
  double lambda_max = 200.0;
  double step = 0.05;

  void validate() const;
};

/// Uniform grid on [-lambda_max, lambda_max]; shifted by half a step when the
/// coefficient has a pole at 0, so that the grid avoids a neighbourhood of 0.
std::vector<double> make_grid(const GridSpec& spec, bool pole_at_zero);

struct SpectralSamples {
  int n = 2;
  Field field = Field::real;
  std::vector<double> lambda;
  std::vector<Complex> mellin;  // M(r^{mellin_power} p)(lambda), entire
  std::vector<Complex> ftilde;  // coeff * mellin; NaN where coeff has a pole
  std::vector<Complex> coeff;
  std::vector<double> w;
  // Centre of the profile's support in ln r; inversion interpolates
  // m(lambda) e^{i lambda log_centre}, which varies slowly in lambda.
  double log_centre = 0.0;

  [[nodiscard]] std::size_t size() const { return lambda.size(); }
};

SpectralSamples sample_spectrum(const TestFunction& f, const GridSpec& spec = {},
                                const numerics::QuadratureConfig& cfg = {});

/// w(lambda) = (A_n / 2 pi) |C(n, lambda)|^{-2}; 0 at a pole of C.
double density_w(int n, double lambda);
/// w_c(lambda) = (A_{2n} / 2 pi) |C_c(n, lambda)|^{-2}; 0 at a pole of C_c.
double density_w_c(int n, double lambda);
double density(int n, double lambda, Field field);

struct Inversion {
  double value = 0.0;
  bool truncated = false;  // |m(+-Lambda)| > 1e-10 max |m|
};

/// Profile value at radius r from the Mellin samples:
/// r^{-p} (1 / 2 pi) \int m(lambda) r^{i lambda} d lambda over the sampled window,
/// m interpolated by 6-point Lagrange polynomials.
Inversion invert(const SpectralSamples& samples, double r);
bool truncation_warning(const SpectralSamples& samples);

struct RoundTrip {
  double sup_error = 0.0;
  double sup_norm = 0.0;
  double relative = 0.0;  // sup_error / sup_norm
  bool truncated = false;
};

/// Samples f, inverts at `radii` log-spaced points across and slightly beyond
/// the support and compares with the profile.
RoundTrip roundtrip(const TestFunction& f, const GridSpec& spec = {}, int radii = 121,
                    const numerics::QuadratureConfig& cfg = {});

struct PlancherelResult {
  double lhs = 0.0;  // \int |f|^2 dx
  double rhs = 0.0;  // \int |ftilde|^2 w d lambda over [-Lambda, Lambda]
  double residual = 0.0;
};

PlancherelResult plancherel(const TestFunction& f, double lambda_max = 200.0,
                            const numerics::QuadratureConfig& cfg = {});

/// Same comparison with an arbitrary spectral density in place of w.
using SpectralDensity = std::function<double(double)>;
PlancherelResult plancherel(const TestFunction& f, const SpectralDensity& weight, double lambda_max = 200.0,
                            const numerics::QuadratureConfig& cfg = {});

double plancherel_residual(const TestFunction& f, double lambda_max = 200.0);
double plancherel_residual_c(const TestFunction& f, double lambda_max = 200.0);

/// CSV with header lambda,re_ftilde,im_ftilde,re_C,im_C,w (plus field_tag for
/// the complex case), 17 significant digits, LF line endings.
void write_csv(std::ostream& out, const SpectralSamples& samples);

}  // namespace conebranch::spectral
