#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace conebranch {

using Complex = std::complex<double>;

namespace numerics {

/// Tolerances shared by the quadrature engines and Monte Carlo estimators.
struct QuadratureConfig {
  double abs_tol = 0.0;
  double rel_tol = 1e-10;
  int max_subdivisions = 2000;
  std::int64_t mc_samples = 1'000'000;
  std::uint64_t rng_seed = 0x5eed'c0ffee'2006ULL;

  /// Throws InvalidArgument unless the invariants hold.
  void validate() const;
};

struct QuadResult {
  Complex value;
  double err_est = 0.0;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  [[nodiscard]] double width() const { return hi - lo; }
};

/// A point where the integrand behaves like |t - location|^(-alpha).
/// alpha <= 0 marks a point of reduced smoothness (kink, phase oscillation)
/// that should only be used as a breakpoint.
/// |t - location|^{-alpha}, possibly times |t - location|^{-i oscillation}.
/// A non-zero oscillation switches to an exponential grading that damps the
/// log-oscillation next to the singular point.
struct EndpointSingularity {
  double location = 0.0;
  double alpha = 0.0;
  double oscillation = 0.0;
};

using Integrand1D = std::function<Complex(double)>;
using IntegrandND = std::function<Complex(std::span<const double>)>;

/// Adaptive Gauss-Kronrod (10/21) quadrature on [lo, hi].
///
/// Declared singular points are split out; next to each one the substitution
/// t = t0 + h u^(1/(1-alpha)) flattens the |t - t0|^(-alpha) factor. The
/// estimate satisfies err_est <= max(abs_tol, rel_tol |value|), where the
/// right-hand side is floored at the round-off level of sum |f| dt.
///
/// Throws NonIntegrableSingularity when a declared alpha >= 1 and
/// MaxSubdivisionsExceeded when the tolerance cannot be met.
QuadResult quad_1d(const Integrand1D& f, Interval interval, const QuadratureConfig& cfg,
                   std::span<const EndpointSingularity> singularities = {});

/// Singular factor |<normal, x> + offset|^(-alpha) carried by a quad_nd integrand.
struct SingularHyperplane {
  std::vector<double> normal;
  double offset = 0.0;
  double alpha = 0.0;
  double oscillation = 0.0;  // as in EndpointSingularity
};

constexpr int kMaxQuadDimension = 4;

/// Nested adaptive Gauss-Kronrod quadrature over a box of dimension <= 4.
///
/// With a singular hyperplane the coordinate carrying the largest normal
/// component is integrated innermost and split at the hyperplane, so the
/// outer integrands stay smooth. Tolerances are absolute, relative to a
/// tensor Gauss-Legendre estimate of the L1 mass of f.
QuadResult quad_nd(const IntegrandND& f, std::span<const Interval> box,
                   const std::optional<SingularHyperplane>& singular, const QuadratureConfig& cfg);

}  // namespace numerics
}  // namespace conebranch
