#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "conebranch/error.hpp"
#include "conebranch/numerics/gamma.hpp"
#include "conebranch/numerics/quadrature.hpp"
#include "conebranch/numerics/sphere.hpp"
#include "conebranch/spectral/plancherel.hpp"
#include "conebranch/spectral/transform.hpp"
#include "doctest.h"
#include "unit/test_support.hpp"

using conebranch::Complex;
using conebranch::Field;
using namespace conebranch::spectral;
namespace nm = conebranch::numerics;
namespace grp = conebranch::group;
using testing_support::random_element;

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI(0.0, 1.0);

double rel(Complex a, Complex b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

ChartPoint chart(Complex x) {
  ChartPoint eta(1);
  eta(0) = x;
  return eta;
}

// |z_1|^2 on S^{2n-1} is Beta(1, n-1): mean of |z_1|^{-s} by 1-D quadrature.
Complex complex_slice_mean(int n, Complex s) {
  nm::QuadratureConfig cfg;
  cfg.rel_tol = 1e-13;
  const std::array<nm::EndpointSingularity, 1> sing = {{{0.0, 0.5 * s.real(), 0.5 * s.imag()}}};
  const auto r = nm::quad_1d(
      [&](double u) { return (n - 1.0) * std::exp(-0.5 * s * std::log(u)) * std::pow(1.0 - u, n - 2); },
      {0.0, 1.0}, cfg, sing);
  return r.value;
}

}  // namespace

TEST_CASE("complex coefficient C_c") {
  // Convergent exponents against the Beta-distribution oracle.
  for (int n : {2, 3, 4}) {
    for (Complex lambda : {Complex(0.0, n - 0.5), Complex(1.3, n - 1.0), Complex(-4.0, n + 0.5)}) {
      const Complex s = kI * lambda + static_cast<double>(n);
      REQUIRE(s.real() < 2.0);
      CHECK(rel(coeff_C_c(n, lambda), sphere_area(n, Field::complex) * complex_slice_mean(n, s)) < 1e-10);
    }
    CHECK(std::abs(sphere_area(n, Field::complex) - 2.0 * std::pow(kPi, n) / std::tgamma(n)) < 1e-12);
  }
  // |C_c|^{-2} is proportional to |(-(i lambda + n - 2)/2)_{n-1}|^2.
  for (int n : {2, 3, 4, 5}) {
    double ratio0 = 0.0;
    for (double lambda : {0.4, 1.0, 2.5, 9.0, 60.0}) {
      const Complex t = -(kI * lambda + static_cast<double>(n - 2)) / 2.0;
      const double ratio = std::norm(nm::pochhammer(t, n - 1)) * std::norm(coeff_C_c(n, lambda));
      if (ratio0 == 0.0) ratio0 = ratio;
      CHECK(std::abs(ratio / ratio0 - 1.0) < 1e-10);
      CHECK(rel(coeff_C_c(n, -lambda), std::conj(coeff_C_c(n, lambda))) < 1e-13);
      CHECK(std::abs(log_abs_coefficient(n, lambda, Field::complex) - std::log(std::abs(coeff_C_c(n, lambda)))) <
            1e-12);
    }
  }
  CHECK_THROWS_AS(coeff_C_c(2, 0.0), conebranch::PoleError);
  CHECK_THROWS_AS(coeff_C_c(4, 0.0), conebranch::PoleError);
  CHECK(std::isfinite(std::abs(coeff_C_c(3, 0.0))));
  CHECK(coefficient_pole_at_zero(2, Field::complex));
  CHECK_FALSE(coefficient_pole_at_zero(3, Field::complex));
  CHECK(coefficient(3, 0.7, Field::complex) == coeff_C_c(3, 0.7));
}

TEST_CASE("complex coefficient against Monte Carlo") {
  nm::QuadratureConfig cfg;
  cfg.mc_samples = 200'000;
  cfg.rng_seed = 11;
  for (int n : {2, 3}) {
    const Complex lambda(0.5, n - 0.8);  // s = n + i lambda, Re s = 0.8
    const Complex s = kI * lambda + static_cast<double>(n);
    const auto mc = nm::sphere_mc(
        [&](std::span<const double> x) { return std::exp(-0.5 * s * std::log(x[0] * x[0] + x[1] * x[1])); }, 2 * n,
        cfg);
    const Complex exact = coeff_C_c(n, lambda) / sphere_area(n, Field::complex);
    CHECK(std::abs(mc.value - exact) <= 3.0 * mc.std_err);
  }
}

TEST_CASE("complex test functions are phase invariant") {
  std::mt19937_64 rng(41);
  for (int n : {2, 3}) {
    const TestFunction f(RadialProfile::log_bump(0.3, 3.0, 1.0, 2.0), random_element(rng, n, Field::complex));
    for (int trial = 0; trial < 10; ++trial) {
      const Eigen::VectorXcd v = testing_support::random_vector(rng, n, Field::complex);
      const Complex phase = std::polar(1.0, 0.37 * (trial + 1));
      CHECK(std::abs(f(phase * v) - f(v)) <= 1e-14);
    }
  }
}

TEST_CASE("complex direct transform and the Mellin reduction") {
  const TestFunction f(RadialProfile::log_bump(0.3, 2.0, 1.0, 2.0), 2, Field::complex);
  // s = 1: z = i.
  const Complex z = point_with_exponent(1.0, 2, Field::complex).z;
  CHECK(std::abs(z - kI) < 1e-15);
  CHECK(rel(direct_T_c(f, z, chart(0.0)), ftilde_c(f, z)) < 1e-5);
  for (Complex eta : {Complex(0.5), Complex(0.3, -1.1), Complex(0.0, 2.0)}) {
    const Complex expected = ftilde_c(f, z) * std::pow(1.0 + std::norm(eta), -0.5);
    CHECK(rel(direct_T_c(f, z, chart(eta)), expected) < 1e-5);
  }
  // Complex exponent.
  const Complex z2 = point_with_exponent(Complex(0.7, 2.0), 2, Field::complex).z;
  const Complex s2(0.7, 2.0);
  const Complex eta(0.4, 0.9);
  CHECK(rel(direct_T_c(f, z2, chart(eta)), ftilde_c(f, z2) * std::exp(-0.5 * s2 * std::log1p(std::norm(eta)))) <
        1e-5);

  CHECK_THROWS_AS(direct_T_c(f, 0.0, chart(0.1)), conebranch::DivergentRegion);
  const TestFunction f3(RadialProfile::log_bump(0.3, 2.0), 3, Field::complex);
  CHECK_THROWS_AS(direct_T_c(f3, Complex(0.0, 2.0), ChartPoint::Zero(2)), conebranch::DimensionTooLarge);
  const TestFunction real(RadialProfile::log_bump(0.3, 2.0), 2, Field::real);
  CHECK_THROWS_AS(direct_T_c(real, kI, chart(0.1)), conebranch::InvalidArgument);
  CHECK_THROWS_AS(ftilde_c(real, 1.0), conebranch::InvalidArgument);
}

TEST_CASE("complex ftilde") {
  const TestFunction f(RadialProfile::log_bump(0.2, 4.0), 3, Field::complex);
  for (double lambda : {0.3, 2.0, 25.0}) {
    CHECK(std::abs(ftilde_c(f, -lambda) - std::conj(ftilde_c(f, lambda))) <= 1e-10 * std::abs(ftilde_c(f, lambda)));
    CHECK(rel(ftilde_c(f, lambda), coeff_C_c(3, lambda) * mellin(f.profile(), lambda, {}, 3.0)) < 1e-9);
  }
  CHECK(mellin_power(3, Field::complex) == 3.0);
  CHECK(rel(ftilde(f, 1.5), ftilde_c(f, 1.5)) < 1e-15);
}

TEST_CASE("complex equivariance") {
  const TestFunction f(RadialProfile::log_bump(0.4, 2.0, 1.0, 2.0), 2, Field::complex);
  const Complex z = point_with_exponent(Complex(1.0, 0.6), 2, Field::complex).z;
  TransformOptions opt;
  opt.cfg.rel_tol = 1e-8;
  CHECK(equivariance_residual_c(f, grp::GroupElement::identity(2, Field::complex), z, chart(0.2), opt) < 1e-10);
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 3; ++trial) {
    const grp::GroupElement g = random_element(rng, 2, Field::complex);
    CHECK(equivariance_residual_c(f, g, z, chart(Complex(0.3, -0.5)), opt) < 1e-5);
  }
  const TestFunction real(RadialProfile::log_bump(0.4, 2.0), 2, Field::real);
  CHECK_THROWS_AS(
      equivariance_residual_c(real, grp::GroupElement::identity(2, Field::real), 0.3, chart(0.2), opt),
      conebranch::InvalidArgument);
}

TEST_CASE("complex density") {
  for (int n : {2, 3, 4}) {
    const double area = sphere_area(n, Field::complex);
    for (double lambda : {0.1, 1.0, 4.2, 80.0}) {
      const double w = density_w_c(n, lambda);
      CHECK(w == density_w_c(n, -lambda));
      CHECK(w > 0.0);
      CHECK(std::abs(w - area / (2 * kPi) / std::norm(coeff_C_c(n, lambda))) <= 1e-12 * w);
      CHECK(w == density(n, lambda, Field::complex));
    }
  }
  CHECK(density_w_c(2, 0.0) == 0.0);
  CHECK(density_w_c(3, 0.0) > 0.0);
}

TEST_CASE("complex round trip and Plancherel") {
  for (int n : {2, 3}) {
    const TestFunction f(RadialProfile::log_bump(0.05, 20.0, 1.0, 2.0), n, Field::complex);
    const RoundTrip rt = roundtrip(f);
    CHECK(rt.relative <= 1e-6);
    CHECK_FALSE(rt.truncated);
    CHECK(plancherel_residual_c(f) <= 1e-6);
    const auto grid = sample_spectrum(f).lambda;
    // Pole at zero for even n: the grid avoids lambda = 0.
    const bool has_zero = std::find(grid.begin(), grid.end(), 0.0) != grid.end();
    CHECK(has_zero == (n % 2 == 1));
  }
  const TestFunction real(RadialProfile::log_bump(0.1, 5.0), 2, Field::real);
  CHECK_THROWS_AS(plancherel_residual_c(real), conebranch::InvalidArgument);
}

TEST_CASE("complex spectral samples CSV") {
  const TestFunction f(RadialProfile::log_bump(0.2, 3.0), 2, Field::complex);
  const SpectralSamples samples = sample_spectrum(f, {1.0, 0.25});
  std::ostringstream out;
  write_csv(out, samples);
  std::istringstream lines(out.str());
  std::string line;
  std::getline(lines, line);
  CHECK(line == "lambda,re_ftilde,im_ftilde,re_C,im_C,w,field_tag");
  std::size_t rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    CHECK(line.substr(line.rfind(',') + 1) == "complex");
  }
  CHECK(rows == samples.size());
}
