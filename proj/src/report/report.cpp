#include "conebranch/report/report.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "conebranch/error.hpp"
#include "conebranch/group/group.hpp"
#include "conebranch/numerics/gamma.hpp"
#include "conebranch/numerics/sphere.hpp"
#include "conebranch/spectral/plancherel.hpp"
#include "conebranch/spectral/transform.hpp"

namespace conebranch::report {

namespace {

namespace nm = numerics;
namespace sp = spectral;
namespace grp = group;

constexpr double kPi = std::numbers::pi;
const Complex kI(0.0, 1.0);

double rel(Complex value, Complex oracle) { return std::abs(value - oracle) / std::max(std::abs(oracle), 1e-300); }

nm::QuadratureConfig oracle_config() {
  nm::QuadratureConfig cfg;
  cfg.rel_tol = 1e-12;
  cfg.max_subdivisions = 20000;
  return cfg;
}

/// 1 / Gamma(z), zero at the poles of Gamma.
Complex reciprocal_gamma(Complex z) { return nm::is_gamma_pole(z) ? Complex(0.0) : std::exp(-nm::log_gamma(z)); }

// Printed sphere mean of |x_1|^{-s}: Gamma(n/2) Gamma(1 - s) / (Gamma(1/2) Gamma((n - s)/2)).
Complex printed_slice_real(int n, Complex s) {
  return std::exp(nm::log_gamma(0.5 * n) + nm::log_gamma(1.0 - s) - nm::log_gamma(0.5) -
                  nm::log_gamma((static_cast<double>(n) - s) / 2.0));
}

// Printed complex sphere mean: 2 pi Gamma(t) / Gamma(t + n - 1), t = 1 - s/2.
Complex printed_slice_complex(int n, Complex s) {
  const Complex t = 1.0 - s / 2.0;
  return 2.0 * kPi * std::exp(nm::log_gamma(t) - nm::log_gamma(t + static_cast<double>(n - 1)));
}

// Printed reciprocal of the real coefficient:
// Gamma(1/2) Gamma((-2i lambda + n)/4) / (2 pi^{n/2} Gamma(-(2i lambda + n - 2)/2)).
Complex printed_inverse_coefficient(int n, Complex lambda) {
  const Complex s = kI * lambda + 0.5 * n;
  return std::exp(nm::log_gamma(0.5) + nm::log_gamma((static_cast<double>(n) - s) / 2.0)) *
         reciprocal_gamma(1.0 - s) / (2.0 * std::pow(kPi, 0.5 * n));
}

// Printed complex inversion factor: (1 / 4 pi^n) (-(i lambda + n - 2)/2)_{n-1}.
Complex printed_inverse_coefficient_c(int n, Complex lambda) {
  const Complex t = -(kI * lambda + static_cast<double>(n - 2)) / 2.0;
  return nm::pochhammer(t, n - 1) / (4.0 * std::pow(kPi, n));
}

void finish(ReconciliationRow& row) {
  const bool derived_ok = row.residual <= row.tolerance;
  const bool printed_ok = row.paper_residual <= row.tolerance;
  row.pass = derived_ok;
  row.verdict = derived_ok ? (printed_ok ? Verdict::both : Verdict::derived)
                           : (printed_ok ? Verdict::printed : Verdict::neither);
}

std::string dim_tag(int n) { return "n=" + std::to_string(n); }

void slice_rows(std::vector<ReconciliationRow>& rows) {
  const nm::QuadratureConfig cfg = oracle_config();
  for (int n : {2, 3, 4, 5}) {
    ReconciliationRow row;
    row.name = "real sphere mean of |x_1|^{-s}, " + dim_tag(n);
    row.paper_value_expr = "Gamma(n/2) Gamma(-(2i lambda+(n-2))/2) / (Gamma(1/2) Gamma((-2i lambda+n)/4))";
    row.derived_value_expr = "Gamma(n/2) Gamma(-(2i lambda+(n-2))/4) / (Gamma(1/2) Gamma((-2i lambda+n)/4))";
    row.tolerance = 1e-8;
    for (Complex s : {Complex(0.0), Complex(0.3), Complex(0.5), Complex(0.5, 0.2), Complex(0.9)}) {
      const Complex oracle = nm::sphere_slice_real_quadrature(n, s, cfg);
      row.residual = std::max(row.residual, rel(nm::sphere_slice_real(n, s), oracle));
      row.paper_residual = std::max(row.paper_residual, rel(printed_slice_real(n, s), oracle));
    }
    row.derived_value = nm::sphere_slice_real(n, 0.5).real();
    row.paper_value = printed_slice_real(n, 0.5).real();
    finish(row);
    rows.push_back(row);
  }
  for (int n : {2, 3}) {
    ReconciliationRow row;
    row.name = "complex sphere mean of |z_1|^{-s}, " + dim_tag(n);
    row.paper_value_expr = "2 pi Gamma(t) / Gamma(t+n-1), t = -(i lambda+n-2)/2";
    row.derived_value_expr = "Gamma(n) Gamma(t) / Gamma(t+n-1), t = -(i lambda+n-2)/2";
    row.tolerance = 1e-8;
    for (Complex s : {Complex(0.0), Complex(0.5), Complex(1.0), Complex(1.5), Complex(1.2, 0.5)}) {
      const Complex oracle = nm::sphere_slice_complex_quadrature(n, s, cfg);
      row.residual = std::max(row.residual, rel(nm::sphere_slice_complex(n, s), oracle));
      row.paper_residual = std::max(row.paper_residual, rel(printed_slice_complex(n, s), oracle));
    }
    row.derived_value = nm::sphere_slice_complex(n, 1.0).real();
    row.paper_value = printed_slice_complex(n, 1.0).real();
    finish(row);
    rows.push_back(row);
  }
}

// The coefficient of the Mellin reduction measured as T f(0) / M(r^{power} p)
// at a point of the convergent region.
void coefficient_rows(std::vector<ReconciliationRow>& rows, const ReportOptions& options) {
  nm::QuadratureConfig tight;
  tight.rel_tol = 1e-13;
  for (int n : {2, 3}) {
    const sp::TestFunction f(options.profile, n, Field::real);
    const Complex z = sp::point_with_exponent(0.5, n, Field::real).z;
    const Complex oracle = sp::direct_T(f, z, grp::ChartPoint::Zero(n - 1)) / sp::mellin(f.profile(), z, tight, 0.5 * n);
    const Complex derived = sp::coeff_C(n, z);
    const Complex printed = 1.0 / printed_inverse_coefficient(n, z);
    ReconciliationRow row;
    row.name = "real transform coefficient at s=1/2, " + dim_tag(n);
    row.paper_value_expr = "2 pi^{n/2} Gamma(-(2i lambda+(n-2))/2) / (Gamma(1/2) Gamma((-2i lambda+n)/4))";
    row.derived_value_expr = "2 pi^{n/2} Gamma(-(2i lambda+(n-2))/4) / (Gamma(1/2) Gamma((-2i lambda+n)/4))";
    row.tolerance = 1e-6;
    row.derived_value = derived.real();
    row.paper_value = printed.real();
    row.residual = rel(derived, oracle);
    row.paper_residual = rel(printed, oracle);
    finish(row);
    rows.push_back(row);
  }
  const int n = 2;
  const sp::TestFunction f(options.profile, n, Field::complex);
  const Complex z = sp::point_with_exponent(1.0, n, Field::complex).z;
  const Complex oracle =
      sp::direct_T_c(f, z, grp::ChartPoint::Zero(n - 1)) / sp::mellin(f.profile(), z, tight, static_cast<double>(n));
  const Complex t = -(kI * z + static_cast<double>(n - 2)) / 2.0;
  const Complex derived = sp::coeff_C_c(n, z);
  const Complex printed = 4.0 * std::pow(kPi, n) * std::exp(nm::log_gamma(t) - nm::log_gamma(t + (n - 1.0)));
  ReconciliationRow row;
  row.name = "complex transform coefficient at s=1, " + dim_tag(n);
  row.paper_value_expr = "4 pi^n Gamma(t) / Gamma(t+n-1), t = -(i lambda+n-2)/2";
  row.derived_value_expr = "2 pi^n Gamma(t) / Gamma(t+n-1), t = -(i lambda+n-2)/2";
  row.tolerance = 1e-5;
  row.derived_value = derived.real();
  row.paper_value = printed.real();
  row.residual = rel(derived, oracle);
  row.paper_residual = rel(printed, oracle);
  finish(row);
  rows.push_back(row);
}

std::vector<double> support_radii(const sp::RadialProfile& p, int count) {
  std::vector<double> radii(count);
  const double lo = std::log(p.r_min());
  const double hi = std::log(p.r_max());
  for (int j = 0; j < count; ++j) {
    radii[j] = std::exp(lo + (hi - lo) * (j + 0.5) / count);
  }
  return radii;
}

struct InversionScore {
  double derived_error = 0.0;
  double printed_error = 0.0;
  double derived_centre = 0.0;
  double printed_centre = 0.0;
};

// Compares the normative inversion with a printed variant. `printed_samples`
// holds the printed Mellin data; `printed_value(v, r)` maps its normative
// inversion v to the printed formula's value at r.
template <typename Map>
InversionScore score_inversion(const sp::TestFunction& f, const sp::SpectralSamples& samples,
                               const sp::SpectralSamples& printed_samples, Map printed_value) {
  InversionScore out;
  const sp::RadialProfile& p = f.profile();
  const double sup = p.sup_norm();
  for (double r : support_radii(p, 41)) {
    const double exact = p.value(r);
    const double derived = sp::invert(samples, r).value;
    const double printed = printed_value(sp::invert(printed_samples, r).value, r);
    out.derived_error = std::max(out.derived_error, std::abs(derived - exact) / sup);
    out.printed_error = std::max(out.printed_error, std::abs(printed - exact) / sup);
  }
  const double centre = std::sqrt(p.r_min() * p.r_max());
  out.derived_centre = sp::invert(samples, centre).value;
  out.printed_centre = printed_value(sp::invert(printed_samples, centre).value, centre);
  return out;
}

void inversion_rows(std::vector<ReconciliationRow>& rows, const ReportOptions& options) {
  const sp::GridSpec grid{options.lambda_max, options.step};
  for (int n : {2, 3, 4}) {
    const sp::TestFunction f(options.profile, n, Field::real);
    const sp::SpectralSamples samples = sp::sample_spectrum(f, grid);
    // Printed kernel: f(r) = \int ftilde r^{i lambda - n/2} (1/C_printed) d lambda, no 1/2 pi.
    sp::SpectralSamples printed = samples;
    for (std::size_t j = 0; j < samples.size(); ++j) {
      printed.mellin[j] = samples.ftilde[j] * printed_inverse_coefficient(n, samples.lambda[j]);
    }
    const InversionScore score = score_inversion(f, samples, printed, [](double v, double) { return 2.0 * kPi * v; });
    ReconciliationRow row;
    row.name = "real inversion formula, " + dim_tag(n);
    row.paper_value_expr =
        "f(r) = Gamma(1/2)/(2 pi^{n/2}) \\int ftilde r^{i lambda-n/2} Gamma((-2i lambda+n)/4)/Gamma(-(2i lambda+(n-2))/2) "
        "d lambda";
    row.derived_value_expr = "f(r) = (1/2 pi) \\int ftilde r^{i lambda-n/2} / C(n,lambda) d lambda";
    row.tolerance = 1e-6;
    row.derived_value = score.derived_centre;
    row.paper_value = score.printed_centre;
    row.residual = score.derived_error;
    row.paper_residual = score.printed_error;
    finish(row);
    rows.push_back(row);

    if (n == 3) {
      // Mellin inversion step as printed: r^{n/2} f(r) = \int M r^{i lambda - 1} d lambda.
      const InversionScore step =
          score_inversion(f, samples, samples, [](double v, double r) { return 2.0 * kPi * v / r; });
      ReconciliationRow mellin_row;
      mellin_row.name = "Mellin inversion step, " + dim_tag(n);
      mellin_row.paper_value_expr = "r^{n/2} f(r) = \\int ftilde b(lambda) r^{i lambda-1} d lambda";
      mellin_row.derived_value_expr = "r^{n/2} f(r) = (1/2 pi) \\int ftilde b(lambda) r^{i lambda} d lambda";
      mellin_row.tolerance = 1e-6;
      mellin_row.derived_value = step.derived_centre;
      mellin_row.paper_value = step.printed_centre;
      mellin_row.residual = step.derived_error;
      mellin_row.paper_residual = step.printed_error;
      finish(mellin_row);
      rows.push_back(mellin_row);
    }
  }
  for (int n : {2, 3}) {
    const sp::TestFunction f(options.profile, n, Field::complex);
    const sp::SpectralSamples samples = sp::sample_spectrum(f, grid);
    sp::SpectralSamples printed = samples;
    for (std::size_t j = 0; j < samples.size(); ++j) {
      printed.mellin[j] = samples.ftilde[j] * printed_inverse_coefficient_c(n, samples.lambda[j]);
    }
    const InversionScore score = score_inversion(f, samples, printed, [](double v, double) { return 2.0 * kPi * v; });
    ReconciliationRow row;
    row.name = "complex inversion formula, " + dim_tag(n);
    row.paper_value_expr = "f(r) = (1/4 pi^n) \\int ftilde r^{i lambda-n} (-(i lambda+n-2)/2)_{n-1} d lambda";
    row.derived_value_expr = "f(r) = (1/2 pi) (1/2 pi^n) \\int ftilde r^{i lambda-n} (-(i lambda+n-2)/2)_{n-1} d lambda";
    row.tolerance = 1e-6;
    row.derived_value = score.derived_centre;
    row.paper_value = score.printed_centre;
    row.residual = score.derived_error;
    row.paper_residual = score.printed_error;
    finish(row);
    rows.push_back(row);
  }
}

// Printed right-hand side as a trapezoid sum over the lambda grid. The printed
// real densities grow like exp(pi |lambda| / 2), so an adaptive rule would
// spend its whole budget before failing; the grid sum is exact enough to
// score residuals of order one.
sp::PlancherelResult printed_plancherel(const sp::TestFunction& f, const sp::SpectralDensity& density,
                                        const ReportOptions& options, double lhs) {
  const sp::SpectralSamples samples = sp::sample_spectrum(f, {options.lambda_max, options.step});
  sp::PlancherelResult out;
  out.lhs = lhs;
  for (std::size_t j = 0; j < samples.size(); ++j) {
    const double weight = (j == 0 || j + 1 == samples.size()) ? 0.5 : 1.0;
    out.rhs += weight * options.step * std::norm(samples.ftilde[j]) * density(samples.lambda[j]);
  }
  out.residual = std::abs(out.lhs - out.rhs) / out.lhs;
  return out;
}

void plancherel_rows(std::vector<ReconciliationRow>& rows, const ReportOptions& options) {
  for (int n : {2, 3, 4}) {
    const sp::TestFunction f(options.profile, n, Field::real);
    const sp::PlancherelResult derived = sp::plancherel(f, options.lambda_max);
    const auto printed_density = [n](double lambda) { return std::norm(printed_inverse_coefficient(n, lambda)); };
    const sp::PlancherelResult printed = printed_plancherel(f, printed_density, options, derived.lhs);

    ReconciliationRow row;
    row.name = "real Plancherel identity, " + dim_tag(n);
    row.paper_value_expr =
        "\\int |ftilde|^2 |Gamma(1/2)/(2 pi^{n/2}) Gamma((-2i lambda+n)/4)/Gamma(-(2i lambda+(n-2))/2)|^2 d lambda";
    row.derived_value_expr = "\\int |ftilde|^2 (A_n/2 pi) |C(n,lambda)|^{-2} d lambda";
    row.tolerance = 1e-6;
    row.derived_value = derived.rhs;
    row.paper_value = printed.rhs;
    row.residual = derived.residual;
    row.paper_residual = printed.residual;
    finish(row);
    rows.push_back(row);

    ReconciliationRow measure = row;
    measure.name = "real Plancherel density at lambda=1, " + dim_tag(n);
    measure.paper_value_expr = "|Gamma(1/2)/(2 pi^{n/2}) Gamma((-2i lambda+n)/4)/Gamma(-(2i lambda+(n-2))/2)|^2";
    measure.derived_value_expr = "w(lambda) = (A_n/2 pi) |C(n,lambda)|^{-2}";
    measure.derived_value = sp::density_w(n, 1.0);
    measure.paper_value = printed_density(1.0);
    rows.push_back(measure);
  }
  for (int n : {2, 3}) {
    const sp::TestFunction f(options.profile, n, Field::complex);
    const sp::PlancherelResult derived = sp::plancherel(f, options.lambda_max);
    const auto printed_density = [n](double lambda) { return std::norm(printed_inverse_coefficient_c(n, lambda)); };
    const sp::PlancherelResult printed = printed_plancherel(f, printed_density, options, derived.lhs);

    ReconciliationRow row;
    row.name = "complex Plancherel identity, " + dim_tag(n);
    row.paper_value_expr = "(1/4 pi^n)^2 \\int |ftilde|^2 |(-(i lambda+n-2)/2)_{n-1}|^2 d lambda";
    row.derived_value_expr = "\\int |ftilde|^2 (A_{2n}/2 pi) |C_c(n,lambda)|^{-2} d lambda";
    row.tolerance = 1e-6;
    row.derived_value = derived.rhs;
    row.paper_value = printed.rhs;
    row.residual = derived.residual;
    row.paper_residual = printed.residual;
    finish(row);
    rows.push_back(row);

    ReconciliationRow measure = row;
    measure.name = "complex Plancherel density at lambda=1, " + dim_tag(n);
    measure.paper_value_expr = "(1/4 pi^n)^2 |(-(i lambda+n-2)/2)_{n-1}|^2";
    measure.derived_value_expr = "w_c(lambda) = (A_{2n}/2 pi) |C_c(n,lambda)|^{-2}";
    measure.derived_value = sp::density_w_c(n, 1.0);
    measure.paper_value = printed_density(1.0);
    rows.push_back(measure);

    // Shape: |C_c|^{-2} / |(t)_{n-1}|^2 is constant in lambda.
    ReconciliationRow shape;
    shape.name = "complex density shape, " + dim_tag(n);
    shape.paper_value_expr = "|C_c|^{-2} proportional to |(-(i lambda+n-2)/2)_{n-1}|^2, factor (1/4 pi^n)^2";
    shape.derived_value_expr = "|C_c|^{-2} = |(-(i lambda+n-2)/2)_{n-1}|^2 / (2 pi^n)^2";
    shape.tolerance = 1e-10;
    const double derived_factor = 1.0 / std::pow(2.0 * std::pow(kPi, n), 2);
    const double printed_factor = 1.0 / std::pow(4.0 * std::pow(kPi, n), 2);
    for (double lambda : {0.1, 0.5, 1.0, 3.0, 10.0, 50.0, 200.0}) {
      const Complex t = -(kI * lambda + static_cast<double>(n - 2)) / 2.0;
      const double ratio = 1.0 / (std::norm(sp::coeff_C_c(n, lambda)) * std::norm(nm::pochhammer(t, n - 1)));
      shape.residual = std::max(shape.residual, std::abs(ratio / derived_factor - 1.0));
      shape.paper_residual = std::max(shape.paper_residual, std::abs(ratio / printed_factor - 1.0));
    }
    shape.derived_value = derived_factor;
    shape.paper_value = printed_factor;
    finish(shape);
    rows.push_back(shape);
  }
}

// pi(g) with the chart cocycle |a eta + b| of the printed n = 2 formula.
Complex printed_pi(Complex lambda, const grp::GroupElement& g, const grp::ChartFunction& f, const grp::ChartPoint& eta) {
  const grp::Decomposition dec = grp::block_decompose(g);
  const Complex s = grp::chart_exponent(lambda, g.n(), g.field());
  const Complex w = dec.blocks.a * eta(0) + dec.blocks.b(0);
  return std::pow(Complex(dec.zeta), s) * std::pow(Complex(std::abs(w)), -s) * f(grp::mobius(dec.blocks, eta));
}

grp::GroupElement random_real(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> normal;
  for (;;) {
    Eigen::MatrixXd m(n, n);
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) m(j, k) = normal(rng);
    }
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const auto& sv = svd.singularValues();
    if (sv(0) <= 5.0 * sv(n - 1)) return grp::GroupElement::real(m);
  }
}

void cocycle_row(std::vector<ReconciliationRow>& rows, const ReportOptions& options) {
  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal;
  const Complex lambda = 0.7;
  const grp::ChartFunction bump = [](const grp::ChartPoint& eta) {
    return std::exp(-eta.squaredNorm()) * (1.0 + 0.3 * kI * eta(0));
  };
  ReconciliationRow row;
  row.name = "chart cocycle, multiplicativity of pi, n=2";
  row.paper_value_expr = "|a x + b|^{-(i lambda+n/2)}";
  row.derived_value_expr = "|a + b x|^{-(i lambda+n/2)}";
  row.tolerance = 1e-10;
  int done = 0;
  while (done < 20) {
    const grp::GroupElement g1 = random_real(rng, 2);
    const grp::GroupElement g2 = random_real(rng, 2);
    grp::ChartPoint eta(1);
    eta(0) = normal(rng);
    try {
      const grp::GroupElement g12(g1.matrix() * g2.matrix(), Field::real);
      const grp::ChartFunction inner = [&](const grp::ChartPoint& y) { return grp::pi_act(lambda, g2, bump, y); };
      const Complex lhs = grp::pi_act(lambda, g12, bump, eta);
      const Complex rhs = grp::pi_act(lambda, g1, inner, eta);
      const grp::ChartFunction printed_inner = [&](const grp::ChartPoint& y) {
        return printed_pi(lambda, g2, bump, y);
      };
      const Complex printed_lhs = printed_pi(lambda, g12, bump, eta);
      const Complex printed_rhs = printed_pi(lambda, g1, printed_inner, eta);
      const double scale = std::max(std::abs(lhs), 1e-300);
      row.residual = std::max(row.residual, std::abs(lhs - rhs) / scale);
      row.paper_residual =
          std::max(row.paper_residual, std::abs(printed_lhs - printed_rhs) / std::max(std::abs(printed_lhs), 1e-300));
      if (done == 0) {
        row.derived_value = std::abs(lhs);
        row.paper_value = std::abs(printed_lhs);
      }
      ++done;
    } catch (const ChartSingularity&) {
      continue;
    }
  }
  finish(row);
  rows.push_back(row);
}

}  // namespace

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::derived:
      return "derived";
    case Verdict::both:
      return "both";
    case Verdict::printed:
      return "printed";
    case Verdict::neither:
      return "neither";
  }
  return "neither";
}

std::vector<ReconciliationRow> reconcile_constants(const ReportOptions& options) {
  std::vector<ReconciliationRow> rows;
  slice_rows(rows);
  coefficient_rows(rows, options);
  inversion_rows(rows, options);
  plancherel_rows(rows, options);
  cocycle_row(rows, options);
  return rows;
}

bool all_pass(const std::vector<ReconciliationRow>& rows) {
  return std::all_of(rows.begin(), rows.end(), [](const ReconciliationRow& row) { return row.pass; });
}

}  // namespace conebranch::report
