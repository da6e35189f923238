#include "conebranch/spectral/transform.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "conebranch/error.hpp"
#include "conebranch/numerics/gamma.hpp"
#include "conebranch/numerics/hyperspherical.hpp"
#include "conebranch/numerics/sphere.hpp"

namespace conebranch::spectral {

namespace nm = numerics;
using numerics::Interval;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
const Complex kI(0.0, 1.0);

Complex real_power(double base, Complex exponent) { return std::exp(exponent * std::log(base)); }

void require_chart(const TestFunction& f, const ChartPoint& eta) {
  if (eta.size() != f.n() - 1) {
    throw InvalidArgument("chart point has dimension " + std::to_string(eta.size()) + ", expected " +
                          std::to_string(f.n() - 1));
  }
  if (f.field() == Field::real && eta.imag().cwiseAbs().maxCoeff() != 0.0) {
    throw InvalidArgument("real chart point with non-zero imaginary part");
  }
}

Eigen::VectorXcd chart_vector(const ChartPoint& eta) {
  Eigen::VectorXcd v(eta.size() + 1);
  v(0) = 1.0;
  v.tail(eta.size()) = eta;
  return v;
}

// Coordinates of R^n in the rotated frame: c in [-1, 1] for y_1 (singular at
// c = 0) followed by y' in R^{n-1}, Cartesian for n = 2 and hyperspherical
// above. |y_1| is confined to the shell inner <= |y| <= outer.
struct FrameShell {
  int n;
  double inner;
  double outer;

  [[nodiscard]] std::vector<Interval> box() const {
    std::vector<Interval> out = {{-1.0, 1.0}};
    if (n == 2) {
      out.push_back({-outer, outer});
    } else {
      const auto tail = nm::hyperspherical_box(n - 1, 0.0, outer);
      out.insert(out.end(), tail.begin(), tail.end());
    }
    return out;
  }

  // Writes y = (y_1, y') and returns the volume element, or 0 off the shell.
  double point(std::span<const double> c, double* y) const {
    double jac = 1.0;
    double rho2 = 0.0;
    if (n == 2) {
      y[1] = c[1];
      rho2 = c[1] * c[1];
    } else {
      jac = nm::hyperspherical_point(c.subspan(1), std::span<double>(y + 1, static_cast<std::size_t>(n - 1)));
      rho2 = c[1] * c[1];
    }
    const double hi2 = outer * outer - rho2;
    if (hi2 <= 0.0) {
      return 0.0;
    }
    const double lo = std::sqrt(std::max(0.0, inner * inner - rho2));
    const double hi = std::sqrt(hi2);
    if (hi <= lo) {
      return 0.0;
    }
    y[0] = std::copysign(lo + std::abs(c[0]) * (hi - lo), c[0]);
    return jac * (hi - lo);
  }
};

nm::SingularHyperplane first_coordinate_plane(int dims, int coordinate, Complex exponent) {
  nm::SingularHyperplane plane;
  plane.normal.assign(static_cast<std::size_t>(dims), 0.0);
  plane.normal[static_cast<std::size_t>(coordinate)] = 1.0;
  plane.offset = 0.0;
  plane.alpha = exponent.real();
  plane.oscillation = exponent.imag();
  return plane;
}

void require_real_dimension(const TestFunction& f, const char* where) {
  if (f.field() != Field::real) {
    throw InvalidArgument(std::string(where) + ": expects a real test function");
  }
  if (f.n() < 2) {
    throw InvalidArgument(std::string(where) + ": n must be >= 2");
  }
  if (f.n() > nm::kMaxQuadDimension) {
    throw DimensionTooLarge(std::string(where) + ": n = " + std::to_string(f.n()) + " exceeds " +
                            std::to_string(nm::kMaxQuadDimension));
  }
}

// \int f(rho u) rho^{power} d rho over the support window along the unit
// vector u, integrated in ln rho. Smooth profiles vanish to all orders at the
// window ends, where nested trapezoid rules converge faster than any power of
// the step; the plateau goes through adaptive quadrature.
struct RadialIntegral {
  const TestFunction& f;
  Complex power;
  nm::QuadratureConfig cfg;

  static constexpr int kMinCells = 32;
  static constexpr int kMaxCells = 1 << 14;

  Complex operator()(std::span<const double> unit) const {
    const auto [lo, hi] = f.radial_window(unit);
    const std::size_t d = unit.size();
    auto integrand = [&](double t) -> Complex {
      const double rho = std::exp(t);
      double x[2 * nm::kMaxQuadDimension];
      for (std::size_t i = 0; i < d; ++i) x[i] = rho * unit[i];
      const double value = f.value(std::span<const double>(x, d));
      return value == 0.0 ? Complex(0.0) : value * std::exp((power + 1.0) * t);
    };
    const double a = std::log(lo);
    const double b = std::log(hi);
    if (f.profile().k_max() == 0) {
      return nm::quad_1d(integrand, {a, b}, cfg).value;
    }
    Complex sum = 0.0;
    double mass = 0.0;
    int cells = kMinCells;
    for (int k = 1; k < cells; ++k) {
      const Complex v = integrand(a + (b - a) * k / cells);
      sum += v;
      mass += std::abs(v);
    }
    Complex estimate = sum * (b - a) / static_cast<double>(cells);
    for (; cells < kMaxCells; cells *= 2) {
      // Odd nodes of the refined rule.
      for (int k = 1; k < 2 * cells; k += 2) {
        const Complex v = integrand(a + (b - a) * k / (2 * cells));
        sum += v;
        mass += std::abs(v);
      }
      const double h = (b - a) / (2 * cells);
      const Complex refined = sum * h;
      if (std::abs(refined - estimate) <= std::max(cfg.rel_tol * mass * h, cfg.abs_tol)) {
        return refined;
      }
      estimate = refined;
    }
    return nm::quad_1d(integrand, {a, b}, cfg).value;
  }
};

nm::QuadratureConfig radial_config(const nm::QuadratureConfig& outer) {
  nm::QuadratureConfig cfg = outer;
  cfg.abs_tol = 0.0;
  cfg.rel_tol = std::max(1e-14, 0.01 * outer.rel_tol);
  return cfg;
}

Complex transform_direct(const TestFunction& f, Complex z, const ChartPoint& eta, const TransformOptions& opt) {
  return f.field() == Field::real ? direct_T(f, z, eta, opt) : direct_T_c(f, z, eta, opt);
}

}  // namespace

SpectralPoint point_with_exponent(Complex s, int n, Field field) {
  const double shift = field == Field::real ? 0.5 * n : static_cast<double>(n);
  return {(s - shift) / kI, n, field};
}

double sphere_area(int n, Field field) { return nm::sphere_area(n * real_dim(field)); }

Complex coeff_C(int n, Complex lambda) {
  return sphere_area(n, Field::real) * nm::sphere_slice_real_continued(n, kI * lambda + 0.5 * n);
}

Complex coeff_C_c(int n, Complex lambda) {
  return sphere_area(n, Field::complex) * nm::sphere_slice_complex_continued(n, kI * lambda + static_cast<double>(n));
}

Complex coefficient(int n, Complex lambda, Field field) {
  return field == Field::real ? coeff_C(n, lambda) : coeff_C_c(n, lambda);
}

double log_abs_coefficient(int n, double lambda, Field field) {
  const double dn = static_cast<double>(n);
  if (field == Field::real) {
    const Complex s = kI * lambda + 0.5 * dn;
    return std::log(sphere_area(n, field)) + nm::log_gamma(0.5 * dn).real() +
           nm::log_gamma((1.0 - s) / 2.0).real() - nm::log_gamma(0.5).real() -
           nm::log_gamma((dn - s) / 2.0).real();
  }
  const Complex s = kI * lambda + dn;
  return std::log(sphere_area(n, field)) + nm::log_gamma(dn).real() + nm::log_gamma(1.0 - s / 2.0).real() -
         nm::log_gamma(dn - s / 2.0).real();
}

bool coefficient_pole_at_zero(int n, Field field) { return field == Field::real ? n % 4 == 2 : n % 2 == 0; }

double mellin_power(int n, Field field) { return field == Field::real ? 0.5 * n : static_cast<double>(n); }

Complex mellin(const RadialProfile& p, Complex lambda, const nm::QuadratureConfig& cfg, double power) {
  cfg.validate();
  const Interval range{std::log(p.r_min()), std::log(p.r_max())};
  const double growth = power + lambda.imag();
  nm::QuadratureConfig loose = cfg;
  loose.abs_tol = 0.0;
  loose.rel_tol = 1e-6;
  const double l1 =
      nm::quad_1d([&](double t) { return Complex(std::abs(p.value(std::exp(t))) * std::exp(growth * t)); }, range,
                  loose)
          .value.real();
  if (l1 == 0.0) {
    return 0.0;
  }
  nm::QuadratureConfig osc = cfg;
  osc.abs_tol = std::max(cfg.abs_tol, cfg.rel_tol * l1);
  const Complex rate = power - kI * lambda;
  return nm::quad_1d([&](double t) { return p.value(std::exp(t)) * std::exp(rate * t); }, range, osc).value;
}

Complex ftilde(const TestFunction& f, Complex lambda, const nm::QuadratureConfig& cfg) {
  if (!f.radial()) {
    throw InvalidArgument("ftilde: the test function must be radial");
  }
  const Complex c = coefficient(f.n(), lambda, f.field());
  return c * mellin(f.profile(), lambda, cfg, mellin_power(f.n(), f.field()));
}

Complex ftilde_c(const TestFunction& f, Complex lambda, const nm::QuadratureConfig& cfg) {
  if (f.field() != Field::complex) {
    throw InvalidArgument("ftilde_c: expects a complex test function");
  }
  return ftilde(f, lambda, cfg);
}

Eigen::MatrixXcd frame_rotation(const ChartPoint& eta, Field field, Rotation rotation) {
  const Eigen::VectorXcd v = chart_vector(eta);
  const Eigen::VectorXcd unit = v / v.norm();
  const Eigen::Index n = v.size();
  Eigen::VectorXcd u = -unit;
  u(0) += 1.0;
  Eigen::MatrixXcd q = Eigen::MatrixXcd::Identity(n, n);
  bool reflected = false;
  // The first entry of unit is real and positive, so I - 2 u u^* / |u|^2
  // maps e_1 to unit in both fields.
  if (u.norm() > 1e-15) {
    q -= 2.0 * u * u.adjoint() / u.squaredNorm();
    reflected = true;
  }
  if ((rotation == Rotation::proper) == reflected) {
    q.col(1) *= -1.0;
  }
  if (field == Field::real) {
    q = q.real().cast<Complex>();
  }
  return q;
}

Complex direct_T(const TestFunction& f, Complex z, const ChartPoint& eta, const TransformOptions& opt) {
  require_real_dimension(f, "direct_T");
  require_chart(f, eta);
  const int n = f.n();
  const Complex s = group::chart_exponent(z, n, Field::real);
  if (s.real() >= 1.0) {
    throw DivergentRegion("direct_T: Re s = " + std::to_string(s.real()) + " >= 1 lies outside the convergent region");
  }
  const Eigen::VectorXcd v = chart_vector(eta);
  const Eigen::MatrixXd q = frame_rotation(eta, Field::real, opt.rotation).real();
  const RadialIntegral radial{f, static_cast<double>(n - 1) - s, radial_config(opt.cfg)};

  // x = rho Q w with w = (sin psi, cos psi w'), w' on S^{n-2}: <x, v> = |v| rho sin psi
  // and dx = rho^{n-1} cos^{n-2} psi d rho d psi dw'. psi is the last coordinate.
  std::vector<Interval> box;
  if (n > 2) {
    const auto sphere = nm::hyperspherical_box(n - 1, 1.0, 1.0);
    box.assign(sphere.begin() + 1, sphere.end());
  }
  box.push_back({-0.5 * std::numbers::pi, 0.5 * std::numbers::pi});
  const auto last = box.size() - 1;

  auto integrand = [&](std::span<const double> c) -> Complex {
    const double psi = c[last];
    const double sin_psi = std::sin(psi);
    const double cos_psi = std::cos(psi);
    double tail[nm::kMaxQuadDimension];
    double weight = 1.0;
    int branches = 1;
    if (n == 2) {
      tail[0] = 1.0;
      branches = 2;
    } else {
      double coords[nm::kMaxQuadDimension];
      coords[0] = 1.0;
      std::copy(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(last), coords + 1);
      weight = nm::hyperspherical_point(std::span<const double>(coords, static_cast<std::size_t>(n - 1)),
                                        std::span<double>(tail, static_cast<std::size_t>(n - 1)));
      weight *= std::pow(cos_psi, n - 2);
    }
    Complex sum = 0.0;
    for (int b = 0; b < branches; ++b) {
      const double sign = b == 0 ? 1.0 : -1.0;
      double x[nm::kMaxQuadDimension];
      for (int i = 0; i < n; ++i) {
        double acc = q(i, 0) * sin_psi;
        for (int j = 1; j < n; ++j) acc += q(i, j) * sign * cos_psi * tail[j - 1];
        x[i] = acc;
      }
      sum += radial(std::span<const double>(x, static_cast<std::size_t>(n)));
    }
    if (sum == 0.0) {
      return 0.0;
    }
    return weight * real_power(std::abs(sin_psi), -s) * sum;
  };
  const auto plane = first_coordinate_plane(static_cast<int>(box.size()), static_cast<int>(last), s);
  return real_power(v.norm(), -s) * nm::quad_nd(integrand, box, plane, opt.cfg).value;
}

Complex direct_T_c(const TestFunction& f, Complex z, const ChartPoint& eta, const TransformOptions& opt) {
  if (f.field() != Field::complex) {
    throw InvalidArgument("direct_T_c: expects a complex test function");
  }
  if (f.n() != 2) {
    throw DimensionTooLarge("direct_T_c: real dimension " + std::to_string(2 * f.n()) + " exceeds " +
                            std::to_string(nm::kMaxQuadDimension));
  }
  require_chart(f, eta);
  const Complex s = group::chart_exponent(z, 2, Field::complex);
  if (s.real() >= 2.0) {
    throw DivergentRegion("direct_T_c: Re s = " + std::to_string(s.real()) +
                          " >= 2 lies outside the convergent region");
  }
  const Eigen::VectorXcd v = chart_vector(eta);
  const Eigen::Matrix2cd q = frame_rotation(eta, Field::complex, opt.rotation);
  const RadialIntegral radial{f, 3.0 - s, radial_config(opt.cfg)};

  // x = rho Q w with w = (c, sqrt(1 - c^2) e^{i alpha}) up to a common phase:
  // |<x, v>| = |v| rho c and dx = rho^3 c d rho dc d alpha d phase. Test
  // functions depend on |L x| with L complex linear, so the phase gives 2 pi.
  const std::array<Interval, 2> box = {{{0.0, kTwoPi}, {0.0, 1.0}}};

  auto integrand = [&](std::span<const double> c) -> Complex {
    const double w1 = c[1];
    const Eigen::Vector2cd y(w1, std::polar(std::sqrt(std::max(0.0, 1.0 - w1 * w1)), c[0]));
    const Eigen::Vector2cd x = q * y;
    const std::array<double, 4> xr = {x(0).real(), x(0).imag(), x(1).real(), x(1).imag()};
    const Complex inner = radial(xr);
    if (inner == 0.0) {
      return 0.0;
    }
    return kTwoPi * real_power(w1, 1.0 - s) * inner;
  };
  const auto plane = first_coordinate_plane(2, 1, s - 1.0);
  return real_power(v.norm(), -s) * nm::quad_nd(integrand, box, plane, opt.cfg).value;
}

int default_continuation_order(Complex s) { return std::max(0, static_cast<int>(std::floor(s.real())) + 1); }

Complex continued_T(const TestFunction& f, Complex lambda, const ChartPoint& eta, std::optional<int> k_opt,
                    const TransformOptions& opt) {
  require_real_dimension(f, "continued_T");
  require_chart(f, eta);
  const int n = f.n();
  const Complex s = group::chart_exponent(lambda, n, Field::real);
  const int k = k_opt.value_or(default_continuation_order(s));
  if (k < 0) {
    throw InvalidArgument("continued_T: k must be non-negative");
  }
  if (k > f.profile().k_max()) {
    throw InsufficientSmoothness("continued_T: k = " + std::to_string(k) + " exceeds the profile order " +
                                 std::to_string(f.profile().k_max()));
  }
  Complex product = 1.0;
  for (int j = 1; j <= k; ++j) {
    if (std::abs(s - static_cast<double>(j)) < 1e-12) {
      throw PoleOfContinuation("continued_T: s = " + std::to_string(j) + " is a pole of the continuation");
    }
    product *= static_cast<double>(j) - s;
  }
  if (s.real() - k >= 1.0) {
    throw DivergentRegion("continued_T: Re s - k = " + std::to_string(s.real() - k) + " >= 1; increase k");
  }
  const Eigen::VectorXcd v = chart_vector(eta);
  const Eigen::MatrixXd q = frame_rotation(eta, Field::real, opt.rotation).real();
  const Eigen::VectorXd direction = q.col(0);
  const FrameShell shell{n, f.inner_radius(), f.outer_radius()};
  const auto box = shell.box();
  const Complex left = 1.0 / product;
  const Complex right = (k % 2 == 0 ? 1.0 : -1.0) / product;
  const Complex power = static_cast<double>(k) - s;

  auto integrand = [&](std::span<const double> c) -> Complex {
    double y[nm::kMaxQuadDimension];
    double x[nm::kMaxQuadDimension];
    const double jac = shell.point(c, y);
    if (jac == 0.0) {
      return 0.0;
    }
    for (int i = 0; i < n; ++i) {
      double acc = 0.0;
      for (int j = 0; j < n; ++j) acc += q(i, j) * y[j];
      x[i] = acc;
    }
    const auto xs = std::span<const double>(x, static_cast<std::size_t>(n));
    if (f.value(xs) == 0.0 && k == 0) {
      return 0.0;
    }
    const double dk = f.directional_jet(xs, std::span<const double>(direction.data(), static_cast<std::size_t>(n)), k)
                          .derivative(k);
    if (dk == 0.0) {
      return 0.0;
    }
    return jac * dk * real_power(std::abs(y[0]), power) * (y[0] < 0.0 ? left : right);
  };
  const auto plane = first_coordinate_plane(static_cast<int>(box.size()), 0, s - static_cast<double>(k));
  return real_power(v.norm(), -s) * nm::quad_nd(integrand, box, plane, opt.cfg).value;
}

Complex spherical_vector(Complex lambda, const ChartPoint& eta, int n, Field field) {
  return group::spherical_vector(lambda, eta, n, field);
}

double equivariance_residual(const TestFunction& f, const group::GroupElement& g, Complex z, const ChartPoint& eta,
                             const TransformOptions& opt) {
  if (!f.radial()) {
    throw InvalidArgument("equivariance_residual: f must be radial");
  }
  if (g.n() != f.n() || g.field() != f.field()) {
    throw InvalidArgument("equivariance_residual: group element does not match the test function");
  }
  const Complex s = group::chart_exponent(z, f.n(), f.field());
  const TestFunction moved(f.profile(), g, group::UnitarityExponent::one);
  const Complex lhs = transform_direct(moved, z, eta, opt);

  const group::Decomposition dec = group::block_decompose(g);
  const Complex w = group::cocycle(dec.blocks, eta);
  const ChartPoint image = group::mobius(dec.blocks, eta);
  const double sign = f.field() == Field::real && g.det().real() < 0.0 ? -1.0 : 1.0;
  const Complex predicted =
      sign * real_power(dec.zeta, s) * real_power(std::abs(w), -s) * transform_direct(f, z, image, opt);
  const double scale = std::max(std::abs(transform_direct(f, z, eta, opt)), 1e-300);
  return std::abs(lhs - predicted) / scale;
}

double equivariance_residual_c(const TestFunction& f, const group::GroupElement& g, Complex z,
                               const ChartPoint& eta, const TransformOptions& opt) {
  if (f.field() != Field::complex) {
    throw InvalidArgument("equivariance_residual_c: expects a complex test function");
  }
  return equivariance_residual(f, g, z, eta, opt);
}

DecayProfile decay_profile(const TestFunction& f, double lambda, std::span<const double> radii,
                           const TransformOptions& opt) {
  DecayProfile out;
  double lo = 0.0;
  for (const double r : radii) {
    ChartPoint eta = ChartPoint::Zero(f.n() - 1);
    eta(0) = r;
    const double product = std::abs(continued_T(f, lambda, eta, std::nullopt, opt)) *
                           std::pow(1.0 + r * r, 0.25 * f.n());
    out.radii.push_back(r);
    out.products.push_back(product);
    if (out.products.size() == 1) lo = product;
    out.max = std::max(out.max, product);
    lo = std::min(lo, product);
  }
  out.variation = out.max > 0.0 ? (out.max - lo) / out.max : 0.0;
  return out;
}

double decay_check(const TestFunction& f, double lambda, std::span<const double> radii,
                   const TransformOptions& opt) {
  return decay_profile(f, lambda, radii, opt).max;
}

}  // namespace conebranch::spectral
