#include "conebranch/spectral/plancherel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <ostream>
#include <string>

#include "conebranch/error.hpp"
#include "conebranch/numerics/gamma.hpp"

namespace conebranch::spectral {

namespace nm = numerics;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kStencil = 6;

bool at_pole(int n, double lambda, Field field) { return lambda == 0.0 && coefficient_pole_at_zero(n, field); }

// Degree-5 Lagrange interpolant of samples on a uniform grid through the six
// nodes surrounding lambda (clamped at the ends of the grid).
class UniformInterpolant {
 public:
  UniformInterpolant(const std::vector<double>& grid, std::vector<Complex> values)
      : origin_(grid.front()), step_(grid[1] - grid[0]), values_(std::move(values)) {
    // Basis denominators prod_{j != i} (i - j) h.
    for (int i = 0; i < kStencil; ++i) {
      double den = 1.0;
      for (int j = 0; j < kStencil; ++j) {
        if (j != i) den *= (i - j) * step_;
      }
      inv_den_[static_cast<std::size_t>(i)] = 1.0 / den;
    }
  }

  Complex operator()(double lambda) const {
    const auto size = static_cast<std::ptrdiff_t>(values_.size());
    const auto cell = static_cast<std::ptrdiff_t>(std::floor((lambda - origin_) / step_));
    const std::ptrdiff_t first = std::clamp<std::ptrdiff_t>(cell - kStencil / 2 + 1, 0, size - kStencil);
    std::array<double, kStencil> d;
    for (int i = 0; i < kStencil; ++i) {
      d[static_cast<std::size_t>(i)] = lambda - (origin_ + static_cast<double>(first + i) * step_);
    }
    std::array<double, kStencil + 1> prefix;
    std::array<double, kStencil + 1> suffix;
    prefix[0] = 1.0;
    suffix[kStencil] = 1.0;
    for (int i = 0; i < kStencil; ++i) {
      prefix[static_cast<std::size_t>(i + 1)] = prefix[static_cast<std::size_t>(i)] * d[static_cast<std::size_t>(i)];
      const auto back = static_cast<std::size_t>(kStencil - 1 - i);
      suffix[back] = suffix[back + 1] * d[back];
    }
    Complex sum = 0.0;
    for (int i = 0; i < kStencil; ++i) {
      const auto ii = static_cast<std::size_t>(i);
      sum += prefix[ii] * suffix[ii + 1] * inv_den_[ii] * values_[static_cast<std::size_t>(first + i)];
    }
    return sum;
  }

 private:
  double origin_;
  double step_;
  std::vector<Complex> values_;
  std::array<double, kStencil> inv_den_{};
};

// Trapezoid rule for M(r^power p)(lambda) in t = ln r. The integrand is smooth
// and vanishes with all derivatives at both ends, so the error is the aliased
// tail of its Fourier transform; the step is halved until the two finest
// rules agree at the extreme frequencies.
class MellinSampler {
 public:
  MellinSampler(const RadialProfile& p, double power, double lambda_max, double rel_tol) {
    lo_ = std::log(p.r_min());
    const double width = std::log(p.r_max()) - lo_;
    Table coarse = table(p, power, width, 256);
    for (int cells = 512; cells <= kMaxCells; cells *= 2) {
      Table fine = table(p, power, width, cells);
      const double scale = fine.mass;
      double diff = 0.0;
      for (const double l : {0.0, 0.5 * lambda_max, lambda_max}) {
        diff = std::max(diff, std::abs(eval(fine, l) - eval(coarse, l)));
      }
      coarse = std::move(fine);
      if (diff <= rel_tol * scale) {
        table_ = std::move(coarse);
        return;
      }
    }
    throw MaxSubdivisionsExceeded("mellin sampling: trapezoid rule did not converge with " +
                                  std::to_string(kMaxCells) + " cells");
  }

  [[nodiscard]] Complex operator()(double lambda) const { return eval(table_, lambda); }

 private:
  static constexpr int kMaxCells = 1 << 18;

  struct Table {
    double step = 0.0;
    double mass = 0.0;
    std::vector<double> values;
  };

  [[nodiscard]] Table table(const RadialProfile& p, double power, double width, int cells) const {
    Table t;
    t.step = width / cells;
    t.values.resize(static_cast<std::size_t>(cells) + 1);
    for (int k = 0; k <= cells; ++k) {
      const double x = lo_ + k * t.step;
      const double v = p.value(std::exp(x)) * std::exp(power * x);
      t.values[static_cast<std::size_t>(k)] = v;
      t.mass += std::abs(v) * t.step;
    }
    return t;
  }

  [[nodiscard]] Complex eval(const Table& t, double lambda) const {
    Complex sum = 0.0;
    for (std::size_t k = 0; k < t.values.size(); ++k) {
      if (t.values[k] != 0.0) {
        const double x = lo_ + static_cast<double>(k) * t.step;
        sum += t.values[k] * std::polar(1.0, -lambda * x);
      }
    }
    return sum * t.step;
  }

  double lo_ = 0.0;
  Table table_;
};

}  // namespace

void GridSpec::validate() const {
  if (!(lambda_max > 0.0) || !(step > 0.0) || step > lambda_max) {
    throw InvalidArgument("grid: need 0 < step <= lambda_max");
  }
}

std::vector<double> make_grid(const GridSpec& spec, bool pole_at_zero) {
  spec.validate();
  const auto half = static_cast<long>(std::floor(spec.lambda_max / spec.step + 1e-9));
  std::vector<double> grid;
  if (pole_at_zero) {
    grid.reserve(static_cast<std::size_t>(2 * half));
    for (long j = -half; j < half; ++j) {
      grid.push_back((static_cast<double>(j) + 0.5) * spec.step);
    }
  } else {
    grid.reserve(static_cast<std::size_t>(2 * half + 1));
    for (long j = -half; j <= half; ++j) {
      grid.push_back(static_cast<double>(j) * spec.step);
    }
  }
  if (grid.size() < static_cast<std::size_t>(kStencil)) {
    throw InvalidArgument("grid: fewer than " + std::to_string(kStencil) + " points");
  }
  return grid;
}

double density_w(int n, double lambda) { return density(n, lambda, Field::real); }

double density_w_c(int n, double lambda) { return density(n, lambda, Field::complex); }

double density(int n, double lambda, Field field) {
  if (n < 1) {
    throw InvalidArgument("density: n must be positive");
  }
  if (at_pole(n, lambda, field)) {
    return 0.0;
  }
  // |C|^{-2} depends on lambda only through |lambda|; evaluating at |lambda|
  // makes w exactly even.
  const double log_c = log_abs_coefficient(n, std::abs(lambda), field);
  return sphere_area(n, field) / kTwoPi * std::exp(-2.0 * log_c);
}

SpectralSamples sample_spectrum(const TestFunction& f, const GridSpec& spec, const nm::QuadratureConfig& cfg) {
  if (!f.radial()) {
    throw InvalidArgument("sample_spectrum: the test function must be radial");
  }
  SpectralSamples out;
  out.n = f.n();
  out.field = f.field();
  out.lambda = make_grid(spec, coefficient_pole_at_zero(f.n(), f.field()));
  out.log_centre = 0.5 * (std::log(f.profile().r_min()) + std::log(f.profile().r_max()));
  const double power = mellin_power(f.n(), f.field());
  const std::size_t size = out.lambda.size();
  // Profiles without full smoothness fall back to adaptive quadrature.
  std::optional<MellinSampler> sampler;
  if (f.profile().k_max() > 0) {
    sampler.emplace(f.profile(), power, std::abs(out.lambda.back()), std::min(cfg.rel_tol, 1e-14));
  }
  out.mellin.resize(size);
  out.ftilde.resize(size);
  out.coeff.resize(size);
  out.w.resize(size);
  for (std::size_t j = 0; j < size; ++j) {
    const double lambda = out.lambda[j];
    out.mellin[j] = sampler ? (*sampler)(lambda) : mellin(f.profile(), lambda, cfg, power);
    out.coeff[j] = coefficient(f.n(), lambda, f.field());
    out.ftilde[j] = out.coeff[j] * out.mellin[j];
    out.w[j] = density(f.n(), lambda, f.field());
  }
  return out;
}

bool truncation_warning(const SpectralSamples& samples) {
  double peak = 0.0;
  for (const auto& m : samples.mellin) {
    peak = std::max(peak, std::abs(m));
  }
  if (peak == 0.0) {
    return false;
  }
  const double tail = std::max(std::abs(samples.mellin.front()), std::abs(samples.mellin.back()));
  return tail > 1e-10 * peak;
}

Inversion invert(const SpectralSamples& samples, double r) {
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw InvalidArgument("invert: radius must be positive and finite");
  }
  if (samples.lambda.size() < static_cast<std::size_t>(kStencil) || samples.mellin.size() != samples.lambda.size()) {
    throw InvalidArgument("invert: need at least six Mellin samples on the grid");
  }
  Inversion out;
  out.truncated = truncation_warning(samples);
  double mass = 0.0;
  for (const auto& m : samples.mellin) {
    mass += std::abs(m);
  }
  if (mass == 0.0) {
    return out;
  }
  const double h = samples.lambda[1] - samples.lambda[0];
  const double log_r = std::log(r);
  std::vector<Complex> centred(samples.size());
  for (std::size_t j = 0; j < samples.size(); ++j) {
    centred[j] = samples.mellin[j] * std::polar(1.0, samples.lambda[j] * samples.log_centre);
  }
  const UniformInterpolant interpolant(samples.lambda, std::move(centred));
  const double shift = log_r - samples.log_centre;
  std::vector<nm::EndpointSingularity> nodes;
  nodes.reserve(samples.lambda.size());
  for (const double l : samples.lambda) {
    nodes.push_back({l, 0.0});
  }
  nm::QuadratureConfig cfg;
  cfg.abs_tol = 1e-14 * mass * h;
  cfg.rel_tol = 1e-12;
  cfg.max_subdivisions = 4 * static_cast<int>(samples.lambda.size());
  const auto integrand = [&](double l) {
    return interpolant(l) * std::polar(1.0, l * shift);
  };
  const Complex integral =
      nm::quad_1d(integrand, {samples.lambda.front(), samples.lambda.back()}, cfg, nodes).value;
  out.value = std::exp(-mellin_power(samples.n, samples.field) * log_r) * integral.real() / kTwoPi;
  return out;
}

RoundTrip roundtrip(const TestFunction& f, const GridSpec& spec, int radii, const nm::QuadratureConfig& cfg) {
  if (radii < 2) {
    throw InvalidArgument("roundtrip: need at least two radii");
  }
  const SpectralSamples samples = sample_spectrum(f, spec, cfg);
  const RadialProfile& p = f.profile();
  RoundTrip out;
  out.sup_norm = p.sup_norm();
  out.truncated = truncation_warning(samples);
  const double lo = std::log(p.r_min() / 1.1);
  const double hi = std::log(p.r_max() * 1.1);
  for (int i = 0; i < radii; ++i) {
    const double r = std::exp(lo + (hi - lo) * i / (radii - 1));
    const double err = std::abs(invert(samples, r).value - p.value(r));
    out.sup_error = std::max(out.sup_error, err);
  }
  out.relative = out.sup_norm > 0.0 ? out.sup_error / out.sup_norm : out.sup_error;
  return out;
}

PlancherelResult plancherel(const TestFunction& f, double lambda_max, const nm::QuadratureConfig& cfg) {
  const int n = f.n();
  const Field field = f.field();
  return plancherel(f, [n, field](double lambda) { return density(n, lambda, field); }, lambda_max, cfg);
}

PlancherelResult plancherel(const TestFunction& f, const SpectralDensity& weight, double lambda_max,
                            const nm::QuadratureConfig& cfg) {
  if (!f.radial()) {
    throw InvalidArgument("plancherel: the test function must be radial");
  }
  if (!(lambda_max > 0.0)) {
    throw InvalidArgument("plancherel: lambda_max must be positive");
  }
  const int n = f.n();
  const Field field = f.field();
  const RadialProfile& p = f.profile();
  const double dims = static_cast<double>(n * real_dim(field));
  const double area = sphere_area(n, field);

  PlancherelResult out;
  const auto radial = [&](double t) {
    const double v = p.value(std::exp(t));
    return Complex(v * v * std::exp(dims * t));
  };
  out.lhs = area * nm::quad_1d(radial, {std::log(p.r_min()), std::log(p.r_max())}, cfg).value.real();
  if (out.lhs == 0.0) {
    return out;
  }

  nm::QuadratureConfig inner = cfg;
  inner.rel_tol = std::min(cfg.rel_tol, 1e-12);
  const double power = mellin_power(n, field);
  const auto spectral = [&](double lambda) {
    if (at_pole(n, lambda, field)) {
      return Complex(0.0);
    }
    const Complex ft = coefficient(n, lambda, field) * mellin(p, lambda, inner, power);
    return Complex(std::norm(ft) * weight(lambda));
  };
  nm::QuadratureConfig outer = cfg;
  outer.abs_tol = std::max(cfg.abs_tol, 1e-3 * cfg.rel_tol * out.lhs);
  const double rhs = nm::quad_1d(spectral, {-lambda_max, 0.0}, outer).value.real() +
                     nm::quad_1d(spectral, {0.0, lambda_max}, outer).value.real();
  out.rhs = rhs;
  out.residual = std::abs(out.lhs - out.rhs) / out.lhs;
  return out;
}

double plancherel_residual(const TestFunction& f, double lambda_max) {
  if (f.field() != Field::real) {
    throw InvalidArgument("plancherel_residual: expects a real test function");
  }
  return plancherel(f, lambda_max).residual;
}

double plancherel_residual_c(const TestFunction& f, double lambda_max) {
  if (f.field() != Field::complex) {
    throw InvalidArgument("plancherel_residual_c: expects a complex test function");
  }
  return plancherel(f, lambda_max).residual;
}

void write_csv(std::ostream& out, const SpectralSamples& samples) {
  const bool tagged = samples.field == Field::complex;
  out << "lambda,re_ftilde,im_ftilde,re_C,im_C,w" << (tagged ? ",field_tag" : "") << '\n';
  char buf[256];
  for (std::size_t j = 0; j < samples.size(); ++j) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g", samples.lambda[j],
                  samples.ftilde[j].real(), samples.ftilde[j].imag(), samples.coeff[j].real(),
                  samples.coeff[j].imag(), samples.w[j]);
    out << buf;
    if (tagged) {
      out << ',' << to_string(samples.field);
    }
    out << '\n';
  }
}

}  // namespace conebranch::spectral
