#include "conebranch/numerics/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "conebranch/error.hpp"
#include "conebranch/numerics/gamma.hpp"

namespace conebranch::numerics {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void require_dimension(int n, int min, const char* where) {
  if (n < min) {
    throw InvalidArgument(std::string(where) + ": dimension must be >= " + std::to_string(min));
  }
}

// (1 - u^{2 gamma}) / (1 - u^2) for 0 <= u <= 1, accurate near u = 1.
double graded_ratio(double u, double gamma) {
  const double lu = std::log(u);
  if (lu == 0.0) return gamma;
  return std::expm1(2.0 * gamma * lu) / std::expm1(2.0 * lu);
}

}  // namespace

double CounterRng::uniform(std::uint64_t counter) const {
  const std::uint64_t key = splitmix64(seed_ ^ splitmix64(stream_ + 0x632be59bd9b4e019ULL));
  const std::uint64_t bits = splitmix64(key ^ splitmix64(counter));
  // 53 random bits, shifted off zero.
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

std::pair<double, double> CounterRng::normal_pair(std::uint64_t counter) const {
  const double u1 = uniform(2 * counter);
  const double u2 = uniform(2 * counter + 1);
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  return {radius * std::cos(angle), radius * std::sin(angle)};
}

McResult sphere_mc(const SphereIntegrand& f, int d, const QuadratureConfig& cfg, std::uint64_t stream) {
  cfg.validate();
  require_dimension(d, 2, "sphere_mc");
  const CounterRng rng(cfg.rng_seed, stream);
  const int pairs = (d + 1) / 2;
  std::vector<double> point(static_cast<std::size_t>(2 * pairs));

  // Welford running moments for the real and imaginary parts.
  Complex mean = 0.0;
  double m2_re = 0.0;
  double m2_im = 0.0;
  for (std::int64_t i = 0; i < cfg.mc_samples; ++i) {
    double norm2 = 0.0;
    for (int p = 0; p < pairs; ++p) {
      const auto [a, b] = rng.normal_pair(static_cast<std::uint64_t>(i) * pairs + p);
      point[2 * p] = a;
      point[2 * p + 1] = b;
    }
    for (int k = 0; k < d; ++k) {
      norm2 += point[k] * point[k];
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (int k = 0; k < d; ++k) {
      point[k] *= inv;
    }
    const Complex v = f(std::span<const double>(point.data(), static_cast<std::size_t>(d)));
    const double count = static_cast<double>(i + 1);
    const Complex delta = v - mean;
    mean += delta / count;
    const Complex delta2 = v - mean;
    m2_re += delta.real() * delta2.real();
    m2_im += delta.imag() * delta2.imag();
  }
  const double samples = static_cast<double>(cfg.mc_samples);
  const double variance = samples > 1 ? (m2_re + m2_im) / (samples - 1.0) : 0.0;
  return {mean, std::sqrt(variance / samples)};
}

Complex sphere_slice_real_continued(int n, Complex s) {
  require_dimension(n, 2, "sphere_slice_real");
  const Complex denominator = (static_cast<double>(n) - s) / 2.0;
  if (is_gamma_pole(denominator)) {
    return 0.0;
  }
  const double half_n = 0.5 * n;
  return checked_exp(log_gamma(half_n) + log_gamma((1.0 - s) / 2.0) - log_gamma(0.5) - log_gamma(denominator));
}

Complex sphere_slice_real(int n, Complex s) {
  if (s.real() >= 1.0) {
    throw DivergentExponent("sphere_slice_real: Re s = " + std::to_string(s.real()) + " >= 1");
  }
  return sphere_slice_real_continued(n, s);
}

Complex sphere_slice_complex_continued(int n, Complex s) {
  require_dimension(n, 2, "sphere_slice_complex");
  const Complex denominator = static_cast<double>(n) - s / 2.0;
  if (is_gamma_pole(denominator)) {
    return 0.0;
  }
  return checked_exp(log_gamma(static_cast<double>(n)) + log_gamma(1.0 - s / 2.0) - log_gamma(denominator));
}

Complex sphere_slice_complex(int n, Complex s) {
  if (s.real() >= 2.0) {
    throw DivergentExponent("sphere_slice_complex: Re s = " + std::to_string(s.real()) + " >= 2");
  }
  return sphere_slice_complex_continued(n, s);
}

Complex sphere_slice_real_quadrature(int n, Complex s, const QuadratureConfig& cfg) {
  require_dimension(n, 2, "sphere_slice_real_quadrature");
  if (s.real() >= 1.0) {
    throw DivergentExponent("sphere_slice_real_quadrature: Re s = " + std::to_string(s.real()) + " >= 1");
  }
  // x_1 on S^{n-1} has density c (1 - t^2)^{(n-3)/2} on [-1, 1].
  const double c = std::tgamma(0.5 * n) / (std::tgamma(0.5) * std::tgamma(0.5 * (n - 1)));
  const double edge = 0.5 * (n - 3);
  const std::vector<EndpointSingularity> sing = {{0.0, s.real(), s.imag()}, {1.0, edge < 0.0 ? -edge : 0.0}};
  const auto f = [&](double t) { return std::pow(1.0 - t * t, edge) * std::exp(-s * std::log(t)); };
  return 2.0 * c * quad_1d(f, {0.0, 1.0}, cfg, sing).value;
}

Complex sphere_slice_complex_quadrature(int n, Complex s, const QuadratureConfig& cfg) {
  require_dimension(n, 2, "sphere_slice_complex_quadrature");
  if (s.real() >= 2.0) {
    throw DivergentExponent("sphere_slice_complex_quadrature: Re s = " + std::to_string(s.real()) + " >= 2");
  }
  // z_1 on S^{2n-1} has density (n-1)/pi (1 - |z|^2)^{n-2} on the unit disc.
  const std::vector<EndpointSingularity> sing = {{0.0, s.real() - 1.0, s.imag()}};
  const auto f = [&](double rho) { return std::pow(1.0 - rho * rho, n - 2) * std::exp((1.0 - s) * std::log(rho)); };
  return 2.0 * (n - 1) * quad_1d(f, {0.0, 1.0}, cfg, sing).value;
}

McResult sphere_slice_real_mc(int n, Complex s, const QuadratureConfig& cfg, std::uint64_t stream) {
  require_dimension(n, 2, "sphere_slice_real_mc");
  if (s.real() >= 1.0) {
    throw DivergentExponent("sphere_slice_real_mc: Re s = " + std::to_string(s.real()) + " >= 1");
  }
  // t -> sign(t) |t|^gamma; the weight gamma |t|^{gamma-1} p(y)/p(t) uses the
  // marginal p(t) ~ (1 - t^2)^{(n-3)/2}, whose normalization cancels. The
  // weighted integrand behaves like |t|^{-1/4}: square integrable, not constant.
  const double gamma = std::max(1.0, 0.75 / (1.0 - s.real()));
  const double edge = 0.5 * (n - 3);
  const auto f = [=](std::span<const double> x) -> Complex {
    const double u = std::abs(x[0]);
    if (u == 0.0) return 0.0;
    const double ratio = edge == 0.0 ? 1.0 : std::pow(graded_ratio(u, gamma), edge);
    return gamma * ratio * std::exp((gamma - 1.0 - gamma * s) * std::log(u));
  };
  return sphere_mc(f, n, cfg, stream);
}

McResult sphere_slice_complex_mc(int n, Complex s, const QuadratureConfig& cfg, std::uint64_t stream) {
  require_dimension(n, 2, "sphere_slice_complex_mc");
  if (s.real() >= 2.0) {
    throw DivergentExponent("sphere_slice_complex_mc: Re s = " + std::to_string(s.real()) + " >= 2");
  }
  // rho = |z_1| -> rho^gamma with marginal rho (1 - rho^2)^{n-2}; the weighted
  // integrand behaves like rho^{-1/2}.
  const double gamma = std::max(1.0, 1.5 / (2.0 - s.real()));
  const auto f = [=](std::span<const double> x) -> Complex {
    const double rho = std::hypot(x[0], x[1]);
    if (rho == 0.0) return 0.0;
    const double ratio = n == 2 ? 1.0 : std::pow(graded_ratio(rho, gamma), n - 2);
    return gamma * ratio * std::exp((2.0 * gamma - 2.0 - gamma * s) * std::log(rho));
  };
  return sphere_mc(f, 2 * n, cfg, stream);
}

double sphere_area(int d) {
  require_dimension(d, 1, "sphere_area");
  return 2.0 * std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(0.5 * d);
}

}  // namespace conebranch::numerics
