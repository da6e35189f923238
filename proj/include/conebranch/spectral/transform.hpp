#pragma once

#include <optional>
#include <span>
#include <vector>

#include "conebranch/group/group.hpp"
#include "conebranch/numerics/quadrature.hpp"
#include "conebranch/spectral/profile.hpp"

namespace conebranch::spectral {

using group::ChartPoint;

/// Continuation variable z with exponent s = i z + n/2 (real) or i z + n
/// (complex). The defining integral converges for Re s < 1 resp. Re s < 2.
struct SpectralPoint {
  Complex z;
  int n = 2;
  Field field = Field::real;

  [[nodiscard]] Complex s() const { return group::chart_exponent(z, n, field); }
  [[nodiscard]] double threshold() const { return field == Field::real ? 1.0 : 2.0; }
  [[nodiscard]] bool convergent() const { return s().real() < threshold(); }
};

/// z with the given exponent s.
SpectralPoint point_with_exponent(Complex s, int n, Field field);

/// Surface area of the unit sphere of R^n (real) or C^n = R^{2n} (complex).
double sphere_area(int n, Field field);

/// C(n, lambda) = A_n S_R(n, i lambda + n/2), the factor in
/// ftilde = C * Mellin(r^{n/2} p). PoleError at its poles.
Complex coeff_C(int n, Complex lambda);

/// C_c(n, lambda) = A_{2n} S_C(n, i lambda + n) = 2 pi^n Gamma(t) / Gamma(t + n - 1),
/// t = -(i lambda + n - 2)/2.
Complex coeff_C_c(int n, Complex lambda);

Complex coefficient(int n, Complex lambda, Field field);

/// log |coefficient|, finite away from poles, used for the density.
double log_abs_coefficient(int n, double lambda, Field field);

/// True when the coefficient has a pole at lambda = 0: n = 2 mod 4 (real)
/// or n even (complex).
bool coefficient_pole_at_zero(int n, Field field);

/// Mellin transform of r^power p(r): integral of p(r) r^{power - i lambda} dr / r,
/// evaluated in t = log r. cfg.rel_tol is relative to the L1 norm of the
/// integrand, which keeps oscillatory evaluations cheap.
Complex mellin(const RadialProfile& p, Complex lambda, const numerics::QuadratureConfig& cfg = {},
               double power = 0.0);

/// ftilde(lambda) = coefficient * Mellin(r^{n/2} p) (real) or
/// coefficient * Mellin(r^n p) (complex). InvalidArgument if f is translated.
Complex ftilde(const TestFunction& f, Complex lambda, const numerics::QuadratureConfig& cfg = {});
Complex ftilde_c(const TestFunction& f, Complex lambda, const numerics::QuadratureConfig& cfg = {});

/// Mellin power used by ftilde: n/2 (real) or n (complex).
double mellin_power(int n, Field field);

/// Orthogonal (unitary) Q with Q e_1 = (1, eta)/|(1, eta)|: a Householder
/// reflection, optionally composed with a sign flip so that det Q = +1.
enum class Rotation { proper, reflection };
Eigen::MatrixXcd frame_rotation(const ChartPoint& eta, Field field, Rotation rotation);

struct TransformOptions {
  numerics::QuadratureConfig cfg = default_config();
  Rotation rotation = Rotation::proper;

  static numerics::QuadratureConfig default_config() {
    numerics::QuadratureConfig c;
    c.rel_tol = 1e-10;
    c.max_subdivisions = 4000;
    return c;
  }
};

/// The defining integral of f(x) |<x, (1, eta)>|^{-s} dx, real n <= 4.
/// DivergentRegion for Re s >= 1.
Complex direct_T(const TestFunction& f, Complex z, const ChartPoint& eta, const TransformOptions& opt = {});

/// Complex version over C^n (n = 2 only, Hermitian pairing); DivergentRegion
/// for Re s >= 2, DimensionTooLarge for n > 2.
Complex direct_T_c(const TestFunction& f, Complex z, const ChartPoint& eta, const TransformOptions& opt = {});

/// Smallest convenient order for the continuation: floor(Re s) + 1, at least 0.
int default_continuation_order(Complex s);

/// Continuation by k integrations by parts in the direction (1, eta):
/// |v|^{-s} [ (1/P) integral_{y1<0} d^k F |y1|^{k-s} + ((-1)^k/P) integral_{y1>0} ... ],
/// P = prod_{j=1}^k (j - s), F = f o Q. PoleOfContinuation when s = j <= k,
/// DivergentRegion when Re s - k >= 1, InsufficientSmoothness when k > k_max.
Complex continued_T(const TestFunction& f, Complex lambda, const ChartPoint& eta, std::optional<int> k = std::nullopt,
                    const TransformOptions& opt = {});

/// (1 + |eta|^2)^{-s/2}.
Complex spherical_vector(Complex lambda, const ChartPoint& eta, int n, Field field = Field::real);

/// Equivariance defect of the transform for a radial f:
/// |T(sigma(g) f)(eta) - sgn(det g) zeta^s |a + b eta|^{-s} T f(mobius(eta))| / |T f(eta)|,
/// with (a, b, c, d) the blocks of (g / zeta)^{-1}. The sign is 1 in the complex case.
double equivariance_residual(const TestFunction& f, const group::GroupElement& g, Complex z, const ChartPoint& eta,
                             const TransformOptions& opt = {});
double equivariance_residual_c(const TestFunction& f, const group::GroupElement& g, Complex z,
                               const ChartPoint& eta, const TransformOptions& opt = {});

struct DecayProfile {
  std::vector<double> radii;
  std::vector<double> products;  // |T f(eta)| (1 + |eta|^2)^{n/4}, eta = radius e_1
  double max = 0.0;
  double variation = 0.0;  // (max - min) / max
};

DecayProfile decay_profile(const TestFunction& f, double lambda, std::span<const double> radii,
                           const TransformOptions& opt = {});

/// max over radii of |continued_T| (1 + |eta|^2)^{n/4}.
double decay_check(const TestFunction& f, double lambda, std::span<const double> radii,
                   const TransformOptions& opt = {});

}  // namespace conebranch::spectral
