#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "conebranch/error.hpp"
#include "conebranch/numerics/gamma.hpp"
#include "conebranch/numerics/quadrature.hpp"
#include "conebranch/numerics/sphere.hpp"
#include "doctest.h"

using conebranch::Complex;
namespace nm = conebranch::numerics;

namespace {

struct GammaReference {
  double re, im, lg_re, lg_im;
};

constexpr GammaReference kReference[] = {
#include "oracle/log_gamma_reference.inc"
};

nm::QuadratureConfig tight(double rel = 1e-13) {
  nm::QuadratureConfig cfg;
  cfg.rel_tol = rel;
  cfg.max_subdivisions = 20000;
  return cfg;
}

// Slice oracle: the sphere mean of |x_1|^{-s} written as a 1-D integral
// over t = |x_1| with the marginal density of x_1 on S^{n-1}.
Complex slice_quadrature_real(int n, Complex s) {
  const double c = std::tgamma(0.5 * n) / (std::tgamma(0.5) * std::tgamma(0.5 * (n - 1)));
  const double edge = 0.5 * (n - 3);
  std::vector<nm::EndpointSingularity> sing = {{0.0, s.real()}, {1.0, edge < 0 ? -edge : 0.0}};
  auto f = [&](double t) { return std::pow(1.0 - t * t, edge) * std::pow(Complex(t), -s); };
  return 2.0 * c * nm::quad_1d(f, {0.0, 1.0}, tight(1e-12), sing).value;
}

// The first complex coordinate of a uniform point on S^{2n-1} has density
// (n-1)/pi (1 - rho^2)^{n-2} on the unit disc.
Complex slice_quadrature_complex(int n, Complex s) {
  std::vector<nm::EndpointSingularity> sing = {{0.0, s.real() - 1.0}};
  auto f = [&](double rho) {
    return std::pow(1.0 - rho * rho, n - 2) * std::pow(Complex(rho), 1.0 - s);
  };
  return (n - 1) / std::numbers::pi * 2.0 * std::numbers::pi * nm::quad_1d(f, {0.0, 1.0}, tight(1e-12), sing).value;
}

double rel_err(Complex a, Complex b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST_CASE("log_gamma classical values") {
  CHECK(std::abs(nm::log_gamma(1.0)) < 1e-15);
  CHECK(std::abs(nm::log_gamma(5.0) - std::log(24.0)) < 1e-14);
  CHECK(std::abs(nm::log_gamma(0.5) - 0.5 * std::log(std::numbers::pi)) < 1e-14);
  CHECK(std::abs(nm::log_gamma(0.5) - 0.5723649429247001) < 1e-14);
}

TEST_CASE("log_gamma matches the high-precision reference table") {
  double worst = 0.0;
  for (const auto& ref : kReference) {
    const Complex got = nm::log_gamma({ref.re, ref.im});
    const Complex want(ref.lg_re, ref.lg_im);
    const double err = std::abs(got - want) / std::max(1.0, std::abs(want));
    worst = std::max(worst, err);
    CHECK_MESSAGE(err <= 1e-13, "z = " << ref.re << "+" << ref.im << "i, err " << err);
  }
  MESSAGE("worst log_gamma error " << worst);
}

TEST_CASE("log_gamma poles and overflow") {
  CHECK_THROWS_AS(nm::log_gamma(0.0), conebranch::PoleError);
  CHECK_THROWS_AS(nm::log_gamma(-3.0), conebranch::PoleError);
  CHECK_NOTHROW(nm::log_gamma(Complex(-3.0, 1e-9)));
  CHECK_THROWS_AS(nm::gamma(200.0), conebranch::OverflowError);
  CHECK_THROWS_AS(nm::log_gamma(Complex(NAN, 0.0)), conebranch::InvalidArgument);
}

TEST_CASE("log_gamma conjugation symmetry") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> re(-50, 50), im(-50, 50);
  for (int i = 0; i < 100; ++i) {
    const Complex z(re(rng), im(rng));
    const Complex a = nm::log_gamma(std::conj(z));
    const Complex b = std::conj(nm::log_gamma(z));
    CHECK(std::abs(a - b) <= 1e-13 * std::max(1.0, std::abs(b)));
  }
}

TEST_CASE("Gamma recurrence") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> re(0.5, 10), im(-20, 20);
  for (int i = 0; i < 100; ++i) {
    const Complex z(re(rng), im(rng));
    const Complex ratio = std::exp(nm::log_gamma(z + 1.0) - nm::log_gamma(z));
    CHECK(std::abs(ratio - z) <= 1e-12 * std::abs(z));
  }
}

TEST_CASE("Gamma reflection") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> re(-0.4, 0.4), im(-5, 5);
  for (int i = 0; i < 100; ++i) {
    const Complex z(re(rng), im(rng));
    if (std::abs(z) < 1e-3) continue;
    const Complex v = std::exp(nm::log_gamma(z) + nm::log_gamma(1.0 - z)) * std::sin(std::numbers::pi * z) /
                      std::numbers::pi;
    CHECK(std::abs(v - 1.0) <= 1e-10);
  }
}

TEST_CASE("beta values") {
  CHECK(std::abs(nm::beta(2.0, 3.0) - 1.0 / 12.0) < 1e-14);
  CHECK(std::abs(nm::beta(3.7, 1.0) - 1.0 / 3.7) < 1e-14);
  CHECK(std::abs(nm::beta(3.0, 1.0) - 1.0 / 3.0) < 1e-14);
  CHECK_THROWS_AS(nm::beta(-1.0, 0.5), conebranch::PoleError);
}

TEST_CASE("pochhammer") {
  CHECK(nm::pochhammer(Complex(0.3, 7.0), 0) == Complex(1.0));
  CHECK(nm::pochhammer(3.0, 2) == Complex(12.0));
  const Complex t(0.5, 1.0);
  const Complex via_gamma = std::exp(nm::log_gamma(t + 3.0) - nm::log_gamma(t));
  CHECK(rel_err(nm::pochhammer(t, 3), via_gamma) < 1e-12);
  CHECK_THROWS_AS(nm::pochhammer(t, -1), conebranch::InvalidArgument);

  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> re(0.2, 6), im(-5, 5);
  std::uniform_int_distribution<int> kk(0, 6);
  for (int i = 0; i < 50; ++i) {
    const Complex z(re(rng), im(rng));
    const int k = kk(rng);
    const Complex lhs = nm::pochhammer(z, k) * nm::gamma(z);
    CHECK(rel_err(lhs, nm::gamma(z + static_cast<double>(k))) < 1e-12);
  }
}

TEST_CASE("quad_1d elementary integrals") {
  const auto cfg = nm::QuadratureConfig{};
  CHECK(std::abs(nm::quad_1d([](double t) { return Complex(t * t); }, {0, 1}, cfg).value - 1.0 / 3.0) < 1e-14);
  const std::array<nm::EndpointSingularity, 1> sing = {{{0.0, 0.5}}};
  const auto r = nm::quad_1d([](double t) { return Complex(1.0 / std::sqrt(t)); }, {0, 1}, cfg, sing);
  CHECK(std::abs(r.value - 2.0) < 1e-12);
  CHECK(r.err_est <= 1e-10 * 2.0 + 1e-15);
  CHECK(std::abs(nm::quad_1d([](double r) { return Complex(1.0 / r); }, {1, 2}, cfg).value - std::log(2.0)) <
        1e-14);
  // reversed interval
  CHECK(std::abs(nm::quad_1d([](double t) { return Complex(t); }, {1, 0}, cfg).value + 0.5) < 1e-15);
}

TEST_CASE("quad_1d interior singularity and oscillation") {
  const std::array<nm::EndpointSingularity, 1> sing = {{{0.25, 0.5}}};
  auto f = [](double t) { return Complex(std::pow(std::abs(t - 0.25), -0.5)); };
  const double exact = 2.0 * (std::sqrt(0.25) + std::sqrt(0.75));
  CHECK(rel_err(nm::quad_1d(f, {0, 1}, tight(1e-10), sing).value, exact) < 1e-10);
  // at the origin the offset t - t0 is exact and much stronger singularities are fine
  const std::array<nm::EndpointSingularity, 1> strong = {{{0.0, 0.9}}};
  auto g = [](double t) { return Complex(std::pow(std::abs(t), -0.9)); };
  CHECK(rel_err(nm::quad_1d(g, {-1, 2}, tight(), strong).value, 10.0 * (1.0 + std::pow(2.0, 0.1))) < 1e-12);

  auto osc = [](double t) { return std::exp(Complex(0, 50.0 * t)); };
  const Complex want = (std::exp(Complex(0, 50.0)) - 1.0) / Complex(0, 50.0);
  CHECK(rel_err(nm::quad_1d(osc, {0, 1}, tight()).value, want) < 1e-12);
}

TEST_CASE("quad_1d errors") {
  const std::array<nm::EndpointSingularity, 1> bad = {{{0.0, 1.0}}};
  CHECK_THROWS_AS(nm::quad_1d([](double t) { return Complex(1.0 / t); }, {0, 1}, {}, bad),
                  conebranch::NonIntegrableSingularity);
  nm::QuadratureConfig few;
  few.max_subdivisions = 3;
  few.rel_tol = 1e-14;
  CHECK_THROWS_AS(nm::quad_1d([](double t) { return std::exp(Complex(0, 1e4 * t)); }, {0, 1}, few),
                  conebranch::MaxSubdivisionsExceeded);
  nm::QuadratureConfig zero;
  zero.rel_tol = 0.0;
  CHECK_THROWS_AS(zero.validate(), conebranch::InvalidArgument);
}

TEST_CASE("quad_nd basics") {
  const nm::QuadratureConfig cfg;
  const std::array<nm::Interval, 2> unit = {{{0, 1}, {0, 1}}};
  CHECK(std::abs(nm::quad_nd([](auto) { return Complex(1.0); }, unit, std::nullopt, cfg).value - 1.0) < 1e-14);

  const std::array<nm::Interval, 2> sym = {{{-1, 1}, {-1, 1}}};
  const nm::SingularHyperplane plane{{1.0, 0.0}, 0.0, 0.5};
  const auto r2 = nm::quad_nd([](auto x) { return Complex(std::pow(std::abs(x[0]), -0.5)); }, sym, plane, cfg);
  const std::array<nm::EndpointSingularity, 1> at0 = {{{0.0, 0.5}}};
  const Complex side = nm::quad_1d([](double t) { return Complex(std::pow(std::abs(t), -0.5)); }, {-1, 1}, cfg, at0).value;
  CHECK(rel_err(r2.value, side * 2.0) < 1e-10);
  CHECK(std::abs(r2.value - 8.0) < 1e-9);

  const std::array<nm::Interval, 3> cube = {{{1, 2}, {1, 2}, {1, 2}}};
  const nm::SingularHyperplane plane3{{1.0, 0.0, 0.0}, 0.0, 0.5};
  const auto r3 = nm::quad_nd([](auto x) { return Complex(std::pow(std::abs(x[0]), -0.5)); }, cube, plane3, cfg);
  const Complex line = nm::quad_1d([](double t) { return Complex(std::pow(t, -0.5)); }, {1, 2}, cfg).value;
  CHECK(rel_err(r3.value, line) < 1e-10);

  const std::array<nm::Interval, 5> big{};
  CHECK_THROWS_AS(nm::quad_nd([](auto) { return Complex(1.0); }, big, std::nullopt, cfg),
                  conebranch::DimensionTooLarge);
}

TEST_CASE("quad_nd separable products") {
  const nm::QuadratureConfig cfg;
  auto g1 = [](double t) { return std::exp(Complex(-t * t, 0.3 * t)); };
  auto g2 = [](double t) { return Complex(1.0 / (1.0 + t * t)); };
  auto g3 = [](double t) { return Complex(std::cos(3.0 * t)); };
  const Complex i1 = nm::quad_1d(g1, {-1, 2}, cfg).value;
  const Complex i2 = nm::quad_1d(g2, {0, 3}, cfg).value;
  const Complex i3 = nm::quad_1d(g3, {-0.5, 0.5}, cfg).value;
  const std::array<nm::Interval, 3> box = {{{-1, 2}, {0, 3}, {-0.5, 0.5}}};
  const auto r = nm::quad_nd([&](auto x) { return g1(x[0]) * g2(x[1]) * g3(x[2]); }, box, std::nullopt, cfg);
  CHECK(rel_err(r.value, i1 * i2 * i3) < 1e-10);

  // singular hyperplane along a skew direction: |x - y|^{-1/2} over [0,1]^2
  const std::array<nm::Interval, 2> sq = {{{0, 1}, {0, 1}}};
  const nm::SingularHyperplane diag{{1.0, -1.0}, 0.0, 0.5};
  const auto rd = nm::quad_nd([](auto x) { return Complex(std::pow(std::abs(x[0] - x[1]), -0.5)); }, sq, diag, cfg);
  CHECK(rel_err(rd.value, 8.0 / 3.0) < 1e-10);
}

TEST_CASE("sphere_mc") {
  nm::QuadratureConfig cfg;
  cfg.mc_samples = 200000;
  const auto one = nm::sphere_mc([](auto) { return Complex(1.0); }, 3, cfg);
  CHECK(std::abs(one.value - 1.0) < 1e-14);
  CHECK(one.std_err < 1e-14);
  const auto sq = nm::sphere_mc([](auto x) { return Complex(x[0] * x[0]); }, 3, cfg);
  CHECK(std::abs(sq.value - 1.0 / 3.0) < 3 * sq.std_err);
  const auto again = nm::sphere_mc([](auto x) { return Complex(x[0] * x[0]); }, 3, cfg);
  CHECK(again.value == sq.value);
  const auto other = nm::sphere_mc([](auto x) { return Complex(x[0] * x[0]); }, 3, cfg, 1);
  CHECK(other.value != sq.value);
  const auto sing = nm::sphere_mc([](auto x) { return Complex(std::pow(std::abs(x[0]), -0.5)); }, 3, cfg);
  CHECK(std::abs(sing.value - nm::sphere_slice_real(3, 0.5)) < 3 * sing.std_err);
}

TEST_CASE("sphere slice constants") {
  for (int n : {2, 3, 5}) CHECK(std::abs(nm::sphere_slice_real(n, 0.0) - 1.0) < 1e-14);
  for (int n : {2, 3}) CHECK(std::abs(nm::sphere_slice_complex(n, 0.0) - 1.0) < 1e-14);
  CHECK(std::abs(nm::sphere_slice_complex(2, 1.0) - 2.0) < 1e-14);
  const double g = std::tgamma(1.5) * std::tgamma(0.25) / (std::tgamma(0.5) * std::tgamma(1.25));
  CHECK(rel_err(nm::sphere_slice_real(3, 0.5), g) < 1e-13);
  CHECK_THROWS_AS(nm::sphere_slice_real(3, 1.0), conebranch::DivergentExponent);
  CHECK_THROWS_AS(nm::sphere_slice_complex(3, Complex(2.0, 1.0)), conebranch::DivergentExponent);
  CHECK_THROWS_AS(nm::sphere_slice_real_continued(2, 1.0), conebranch::PoleError);
  CHECK(std::abs(nm::sphere_area(3) - 4.0 * std::numbers::pi) < 1e-13);

  for (int n : {2, 3, 4, 5}) {
    for (Complex s : {Complex(0.0), Complex(0.3), Complex(0.5), Complex(0.5, 0.2), Complex(0.9)}) {
      CHECK_MESSAGE(rel_err(nm::sphere_slice_real(n, s), slice_quadrature_real(n, s)) < 1e-8, n << " " << s);
    }
  }
  for (int n : {2, 3}) {
    for (Complex s : {Complex(0.0), Complex(0.7), Complex(1.0), Complex(1.5, -0.4), Complex(1.9)}) {
      CHECK_MESSAGE(rel_err(nm::sphere_slice_complex(n, s), slice_quadrature_complex(n, s)) < 1e-8, n << " " << s);
    }
  }
}

TEST_CASE("sphere slice constants against Monte Carlo") {
  nm::QuadratureConfig cfg;
  cfg.mc_samples = 200000;
  const Complex s(0.3, 0.2);
  const auto r2 = nm::sphere_mc([&](auto x) { return std::pow(Complex(std::abs(x[0])), -s); }, 2, cfg);
  CHECK(std::abs(r2.value - nm::sphere_slice_real(2, s)) < 3 * r2.std_err);
  const auto c3 = nm::sphere_mc(
      [](auto x) { return Complex(std::pow(std::hypot(x[0], x[1]), -0.7)); }, 6, cfg);
  CHECK(std::abs(c3.value - nm::sphere_slice_complex(3, 0.7)) < 3 * c3.std_err);
}

TEST_CASE("library slice quadratures") {
  for (int n : {2, 3, 4, 5}) {
    for (Complex s : {Complex(0.0), Complex(0.3), Complex(0.9), Complex(0.5, 0.2)}) {
      CHECK(rel_err(nm::sphere_slice_real_quadrature(n, s, tight(1e-12)), slice_quadrature_real(n, s)) < 1e-10);
    }
  }
  for (int n : {2, 3}) {
    for (Complex s : {Complex(0.0), Complex(1.0), Complex(1.5, 0.3)}) {
      CHECK(rel_err(nm::sphere_slice_complex_quadrature(n, s, tight(1e-12)), slice_quadrature_complex(n, s)) < 1e-10);
    }
  }
  CHECK_THROWS_AS(nm::sphere_slice_real_quadrature(3, 1.0, tight()), conebranch::DivergentExponent);
  CHECK_THROWS_AS(nm::sphere_slice_complex_quadrature(3, 2.0, tight()), conebranch::DivergentExponent);
}

TEST_CASE("graded Monte Carlo slice estimators") {
  nm::QuadratureConfig cfg;
  cfg.mc_samples = 200'000;
  // s = 0 reduces to the constant 1.
  CHECK(std::abs(nm::sphere_slice_real_mc(3, 0.0, cfg).value - 1.0) < 1e-14);
  CHECK(std::abs(nm::sphere_slice_complex_mc(2, 0.0, cfg).value - 1.0) < 1e-14);
  std::uint64_t stream = 0;
  for (int n : {2, 3, 4}) {
    for (Complex s : {Complex(0.3), Complex(0.8), Complex(0.95, -0.4)}) {
      const auto est = nm::sphere_slice_real_mc(n, s, cfg, stream++);
      CHECK(est.std_err > 0.0);
      CHECK(std::abs(est.value - slice_quadrature_real(n, s)) <= 4.0 * est.std_err);
    }
  }
  for (int n : {2, 3}) {
    for (Complex s : {Complex(0.7), Complex(1.8), Complex(1.4, 1.0)}) {
      const auto est = nm::sphere_slice_complex_mc(n, s, cfg, stream++);
      CHECK(est.std_err > 0.0);
      CHECK(std::abs(est.value - slice_quadrature_complex(n, s)) <= 4.0 * est.std_err);
    }
  }
  // The standard error shrinks like N^{-1/2}, as it must for finite variance.
  cfg.mc_samples = 40'000;
  const double coarse = nm::sphere_slice_real_mc(3, 0.95, cfg).std_err;
  cfg.mc_samples = 640'000;
  const double fine = nm::sphere_slice_real_mc(3, 0.95, cfg).std_err;
  CHECK(coarse / fine == doctest::Approx(4.0).epsilon(0.15));
  CHECK_THROWS_AS(nm::sphere_slice_real_mc(3, 1.0, cfg), conebranch::DivergentExponent);
  CHECK_THROWS_AS(nm::sphere_slice_complex_mc(2, 2.0, cfg), conebranch::DivergentExponent);
}
