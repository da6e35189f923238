#pragma once

#include <cstdint>
#include <functional>
#include <span>

#include "conebranch/numerics/quadrature.hpp"

namespace conebranch::numerics {

/// Counter-based generator: draw k of stream j is a pure function of
/// (seed, j, k), so substreams can be split without shared state.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {}

  /// Uniform double in (0, 1) for the given counter.
  [[nodiscard]] double uniform(std::uint64_t counter) const;

  /// Standard normal pair (Box-Muller) for the given counter.
  [[nodiscard]] std::pair<double, double> normal_pair(std::uint64_t counter) const;

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
};

struct McResult {
  Complex value;
  double std_err = 0.0;
};

using SphereIntegrand = std::function<Complex(std::span<const double>)>;

/// Monte Carlo mean of f over S^{d-1} with the normalized surface measure.
/// Points are normalized Gaussian vectors; cfg.mc_samples and cfg.rng_seed
/// fix the estimate completely.
McResult sphere_mc(const SphereIntegrand& f, int d, const QuadratureConfig& cfg, std::uint64_t stream = 0);

/// Normalized-sphere mean of |x_1|^{-s} over S^{n-1}:
/// Gamma(n/2) Gamma((1-s)/2) / (Gamma(1/2) Gamma((n-s)/2)).
/// Throws DivergentExponent for Re s >= 1.
Complex sphere_slice_real(int n, Complex s);

/// Same closed form without the convergence check (meromorphic in s).
Complex sphere_slice_real_continued(int n, Complex s);

/// Normalized-sphere mean of |z_1|^{-s} over S^{2n-1} in C^n:
/// Gamma(n) Gamma(1 - s/2) / Gamma(n - s/2).
/// Throws DivergentExponent for Re s >= 2.
Complex sphere_slice_complex(int n, Complex s);

/// Same closed form without the convergence check.
Complex sphere_slice_complex_continued(int n, Complex s);

/// The same means as 1-D quadratures over the marginal density of the first
/// coordinate; an oracle independent of the Gamma closed forms.
Complex sphere_slice_real_quadrature(int n, Complex s, const QuadratureConfig& cfg);
Complex sphere_slice_complex_quadrature(int n, Complex s, const QuadratureConfig& cfg);

/// Monte Carlo estimates of the same means with finite variance. The first
/// coordinate (resp. |z_1|) u of a uniform point is mapped to u^gamma and
/// weighted by the exact density ratio; gamma = max(1, 0.75/(1 - Re s)) (real)
/// or max(1, 1.5/(2 - Re s)) (complex) makes the weighted integrand square
/// integrable, so the standard error is meaningful.
McResult sphere_slice_real_mc(int n, Complex s, const QuadratureConfig& cfg, std::uint64_t stream = 0);
McResult sphere_slice_complex_mc(int n, Complex s, const QuadratureConfig& cfg, std::uint64_t stream = 0);

/// Surface area of S^{d-1}: 2 pi^{d/2} / Gamma(d/2).
double sphere_area(int d);

}  // namespace conebranch::numerics
