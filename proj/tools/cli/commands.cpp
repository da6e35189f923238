#include "cli/commands.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>

#include "cli/output.hpp"
#include "conebranch/cone/cone.hpp"
#include "conebranch/error.hpp"
#include "conebranch/group/group.hpp"
#include "conebranch/numerics/sphere.hpp"
#include "conebranch/report/report.hpp"
#include "conebranch/spectral/plancherel.hpp"
#include "conebranch/spectral/transform.hpp"

namespace conebranch::cli {

namespace {

namespace sp = spectral;
namespace grp = group;
namespace nm = numerics;

using Handler = int (*)(const RunConfig&, std::ostream&, std::ostream&);

double tolerance(const RunConfig& c, double fallback) { return c.tol.value_or(fallback); }

nm::QuadratureConfig quadrature(const RunConfig& c, double fallback) {
  nm::QuadratureConfig cfg;
  cfg.rel_tol = c.rel_tol.value_or(fallback);
  cfg.max_subdivisions = 4000;
  cfg.mc_samples = c.samples;
  cfg.rng_seed = c.seed;
  try {
    cfg.validate();
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }
  return cfg;
}

void require_n(const RunConfig& c, int lo, int hi) {
  if (c.n < lo || c.n > hi) {
    throw UsageError("--n must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "], got " +
                     std::to_string(c.n));
  }
}

sp::TestFunction radial_function(const RunConfig& c) { return {c.profile.make(), c.n, c.field}; }

grp::ChartPoint chart_point(const RunConfig& c) {
  if (c.eta.empty()) {
    return grp::ChartPoint::Zero(c.n - 1);
  }
  if (static_cast<int>(c.eta.size()) != c.n - 1) {
    throw UsageError("--eta needs n - 1 = " + std::to_string(c.n - 1) + " entries, got " +
                     std::to_string(c.eta.size()));
  }
  grp::ChartPoint eta(c.n - 1);
  for (int j = 0; j < c.n - 1; ++j) {
    if (c.field == Field::real && c.eta[j].imag() != 0.0) {
      throw UsageError("--eta must be real in the real case");
    }
    eta(j) = c.eta[j];
  }
  return eta;
}

// Continuation variable from --lambda or --s; `default_s` when neither is set.
Complex spectral_variable(const RunConfig& c, Complex default_s) {
  if (c.s && c.lambda) {
    throw UsageError("give at most one of --s and --lambda");
  }
  if (c.lambda) return *c.lambda;
  return sp::point_with_exponent(c.s.value_or(default_s), c.n, c.field).z;
}

grp::GroupElement random_element(std::mt19937_64& rng, int n, Field field) {
  std::normal_distribution<double> normal;
  for (;;) {
    Eigen::MatrixXcd m(n, n);
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        m(j, k) = field == Field::real ? Complex(normal(rng)) : Complex(normal(rng), normal(rng));
      }
    }
    const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    const auto& sv = svd.singularValues();
    if (sv(0) <= 5.0 * sv(n - 1)) return {m, field};
  }
}

Eigen::VectorXcd random_vector(std::mt19937_64& rng, int n, Field field) {
  std::normal_distribution<double> normal;
  Eigen::VectorXcd v(n);
  for (int j = 0; j < n; ++j) {
    v(j) = field == Field::real ? Complex(normal(rng)) : Complex(normal(rng), normal(rng));
  }
  return v;
}

void require_trials(const RunConfig& c) {
  if (c.trials < 1) throw UsageError("--trials must be positive");
}

int verdict(bool ok) { return ok ? kExitOk : kExitTolerance; }

int density_cmd(const RunConfig& c, std::ostream& out, std::ostream&) {
  require_n(c, 2, 64);
  const sp::GridSpec spec{c.lambda_max, c.step};
  try {
    spec.validate();
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }
  CsvTable table({"lambda", "w"});
  for (double lambda : sp::make_grid(spec, false)) {
    table.cell(lambda).cell(sp::density(c.n, lambda, c.field)).end_row();
  }
  table.write(out);
  return kExitOk;
}

int transform_cmd(const RunConfig& c, std::ostream& out, std::ostream&) {
  require_n(c, 2, c.field == Field::real ? 4 : 3);
  const sp::TestFunction f = radial_function(c);
  const Complex z = spectral_variable(c, c.field == Field::real ? 0.5 : 1.0);
  const grp::ChartPoint eta = chart_point(c);
  const sp::SpectralPoint point{z, c.n, c.field};
  sp::TransformOptions opt;
  opt.cfg = quadrature(c, 1e-10);

  std::string method = c.method;
  if (method == "auto") {
    if (c.field == Field::real) {
      method = point.convergent() ? "direct" : "continued";
    } else {
      method = point.convergent() && c.n == 2 ? "direct" : "reduction";
    }
  }
  const Complex reduction = sp::ftilde(f, z, opt.cfg) * sp::spherical_vector(z, eta, c.n, c.field);
  Complex value;
  if (method == "direct") {
    value = c.field == Field::real ? sp::direct_T(f, z, eta, opt) : sp::direct_T_c(f, z, eta, opt);
  } else if (method == "continued") {
    if (c.field != Field::real) throw UsageError("--method continued is available in the real case only");
    value = sp::continued_T(f, z, eta, c.k, opt);
  } else if (method == "reduction") {
    value = reduction;
  } else {
    throw UsageError("--method must be auto, direct, continued or reduction");
  }
  const double residual = std::abs(value - reduction) / std::max(std::abs(reduction), 1e-300);
  const double tol = tolerance(c, c.field == Field::real ? 1e-6 : 1e-5);
  CsvTable table({"method", "lambda_re", "lambda_im", "s_re", "s_im", "re_T", "im_T", "re_reduction",
                  "im_reduction", "residual", "pass"});
  table.cell(method).cell(z).cell(point.s()).cell(value).cell(reduction).cell(residual).cell(residual <= tol).end_row();
  table.write(out);
  return verdict(residual <= tol);
}

void write_samples(const RunConfig& c, const sp::SpectralSamples& samples) {
  if (c.samples_out.empty()) return;
  std::ofstream file(c.samples_out, std::ios::binary);
  if (!file) throw UsageError("cannot open '" + c.samples_out + "' for writing");
  sp::write_csv(file, samples);
}

sp::SpectralSamples spectrum(const RunConfig& c, const sp::TestFunction& f) {
  const sp::GridSpec spec{c.lambda_max, c.step};
  try {
    spec.validate();
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }
  return sp::sample_spectrum(f, spec);
}

int invert_cmd(const RunConfig& c, std::ostream& out, std::ostream& err) {
  require_n(c, 2, 16);
  if (c.radii < 1) throw UsageError("--radii must be positive");
  const sp::TestFunction f = radial_function(c);
  const sp::SpectralSamples samples = spectrum(c, f);
  write_samples(c, samples);
  const sp::RadialProfile& p = f.profile();
  const double lo = std::log(p.r_min() / 1.1);
  const double hi = std::log(p.r_max() * 1.1);
  CsvTable table({"r", "inverse", "profile", "abs_error"});
  double worst = 0.0;
  bool truncated = false;
  for (int j = 0; j < c.radii; ++j) {
    const double r = std::exp(c.radii == 1 ? 0.5 * (lo + hi) : lo + (hi - lo) * j / (c.radii - 1));
    const sp::Inversion inv = sp::invert(samples, r);
    const double exact = p.value(r);
    worst = std::max(worst, std::abs(inv.value - exact));
    truncated = truncated || inv.truncated;
    table.cell(r).cell(inv.value).cell(exact).cell(std::abs(inv.value - exact)).end_row();
  }
  table.write(out);
  if (truncated) err << "warning: spectral samples do not decay at lambda_max; inversion is truncated\n";
  return verdict(worst <= tolerance(c, 1e-6) * p.sup_norm());
}

int roundtrip_cmd(const RunConfig& c, std::ostream& out, std::ostream&) {
  require_n(c, 2, 16);
  if (c.radii < 2) throw UsageError("--radii must be at least 2");
  const sp::TestFunction f = radial_function(c);
  const sp::GridSpec spec{c.lambda_max, c.step};
  try {
    spec.validate();
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }
  const sp::RoundTrip rt = sp::roundtrip(f, spec, c.radii);
  const double tol = tolerance(c, 1e-6);
  CsvTable table({"case", "n", "sup_error", "sup_norm", "relative", "truncated", "tol", "pass"});
  table.cell(std::string(to_string(c.field)))
      .cell(c.n)
      .cell(rt.sup_error)
      .cell(rt.sup_norm)
      .cell(rt.relative)
      .cell(rt.truncated)
      .cell(tol)
      .cell(rt.relative <= tol)
      .end_row();
  table.write(out);
  return verdict(rt.relative <= tol);
}

int plancherel_cmd(const RunConfig& c, std::ostream& out, std::ostream&) {
  require_n(c, 2, 16);
  if (!(c.lambda_max > 0.0)) throw UsageError("--lmax must be positive");
  const sp::TestFunction f = radial_function(c);
  const sp::PlancherelResult result = sp::plancherel(f, c.lambda_max, quadrature(c, 1e-10));
  const double tol = tolerance(c, 1e-6);
  CsvTable table({"case", "n", "lambda_max", "lhs", "rhs", "residual", "tol", "pass"});
  table.cell(std::string(to_string(c.field)))
      .cell(c.n)
      .cell(c.lambda_max)
      .cell(result.lhs)
      .cell(result.rhs)
      .cell(result.residual)
      .cell(tol)
      .cell(result.residual <= tol)
      .end_row();
  table.write(out);
  return verdict(result.residual <= tol);
}

int equivariance_cmd(const RunConfig& c, std::ostream& out, std::ostream&) {
  require_n(c, 2, c.field == Field::real ? 3 : 2);
  require_trials(c);
  const sp::TestFunction f = radial_function(c);
  const Complex z = spectral_variable(c, c.field == Field::real ? 0.5 : 1.0);
  const grp::ChartPoint eta = chart_point(c);
  sp::TransformOptions opt;
  opt.cfg = quadrature(c, 1e-8);
  const double tol = tolerance(c, c.field == Field::real ? 1e-6 : 1e-5);
  std::mt19937_64 rng(c.seed);
  CsvTable table({"trial", "det_re", "det_im", "residual", "pass"});
  bool ok = true;
  for (int trial = 0; trial < c.trials; ++trial) {
    const grp::GroupElement g = random_element(rng, c.n, c.field);
    const double residual = c.field == Field::real ? sp::equivariance_residual(f, g, z, eta, opt)
                                                   : sp::equivariance_residual_c(f, g, z, eta, opt);
    ok = ok && residual <= tol;
    table.cell(trial).cell(g.det()).cell(residual).cell(residual <= tol).end_row();
  }
  table.write(out);
  return verdict(ok);
}

int sphere_check_cmd(const RunConfig& c, std::ostream& out, std::ostream&) {
  require_n(c, 2, 16);
  const Complex s = c.s.value_or(0.5);
  nm::QuadratureConfig oracle = quadrature(c, 1e-12);
  oracle.max_subdivisions = 20000;
  const bool real = c.field == Field::real;
  const Complex closed = real ? nm::sphere_slice_real(c.n, s) : nm::sphere_slice_complex(c.n, s);
  const Complex quad = real ? nm::sphere_slice_real_quadrature(c.n, s, oracle)
                            : nm::sphere_slice_complex_quadrature(c.n, s, oracle);
  const nm::McResult mc = real ? nm::sphere_slice_real_mc(c.n, s, oracle) : nm::sphere_slice_complex_mc(c.n, s, oracle);
  const double quad_residual = std::abs(quad - closed) / std::abs(closed);
  // Standard error floored at rounding: s = 0 gives a constant estimator.
  const double sigmas = std::abs(mc.value - closed) / std::max(mc.std_err, 1e-14 * std::abs(closed));
  const bool ok = quad_residual <= tolerance(c, 1e-8) && sigmas <= 3.0;
  CsvTable table({"case", "n", "s_re", "s_im", "closed_re", "closed_im", "quadrature_re", "quadrature_im", "mc_re",
                  "mc_im", "mc_std_err", "quadrature_residual", "mc_sigmas", "pass"});
  table.cell(std::string(to_string(c.field)))
      .cell(c.n)
      .cell(s)
      .cell(closed)
      .cell(quad)
      .cell(mc.value)
      .cell(mc.std_err)
      .cell(quad_residual)
      .cell(sigmas)
      .cell(ok)
      .end_row();
  table.write(out);
  return verdict(ok);
}

int factorize_cmd(const RunConfig& c, std::ostream& out, std::ostream&) {
  require_n(c, 2, 16);
  require_trials(c);
  const double tol = tolerance(c, 1e-12);
  std::mt19937_64 rng(c.seed);
  CsvTable table({"trial", "residual", "pass"});
  bool ok = true;
  for (int trial = 0; trial < c.trials; ++trial) {
    const grp::GroupElement g = random_element(rng, c.n, c.field);
    const grp::GroupElement h(g.unimodular(), c.field);
    const grp::ChartPoint x = c.eta.empty() ? grp::ChartPoint(random_vector(rng, c.n - 1, c.field)) : chart_point(c);
    const grp::QmanFactors q = grp::factorize_qman(h, x);
    const Eigen::MatrixXcd lhs = h.matrix() * grp::nbar(x);
    const double residual = (lhs - q.nbar * q.m * q.a * q.n).norm() / lhs.norm();
    ok = ok && residual <= tol;
    table.cell(trial).cell(residual).cell(residual <= tol).end_row();
  }
  table.write(out);
  return verdict(ok);
}

int pushforward_cmd(const RunConfig& c, std::ostream& out, std::ostream&) {
  require_n(c, 2, c.field == Field::real ? 4 : 2);
  require_trials(c);
  const sp::RadialProfile p = c.profile.make();
  const cone::OrbitFunction f{[p](const cone::ConeMatrix& x) { return Complex(p.value(std::sqrt(x.entries.trace().real()))); },
                              p.r_min(), p.r_max()};
  const nm::QuadratureConfig cfg = quadrature(c, 1e-9);
  const double tol = tolerance(c, 1e-6);
  std::mt19937_64 rng(c.seed);
  CsvTable table({"trial", "abs_det", "quasi_invariance", "eta_equivariance", "pass"});
  bool ok = true;
  for (int trial = 0; trial < c.trials; ++trial) {
    const grp::GroupElement g = random_element(rng, c.n, c.field);
    const double quasi = cone::quasi_invariance_residual(f, g, cfg);
    const cone::OrbitVector v{random_vector(rng, c.n, c.field), c.field};
    const cone::ConeMatrix moved = cone::eta({g.matrix() * v.coords, c.field});
    const cone::ConeMatrix acted = cone::act(g, cone::eta(v));
    const double eta_residual = (moved.entries - acted.entries).norm() / acted.entries.norm();
    const bool pass = quasi <= tol && eta_residual <= 1e-12;
    ok = ok && pass;
    table.cell(trial).cell(std::abs(g.det())).cell(quasi).cell(eta_residual).cell(pass).end_row();
  }
  table.write(out);
  return verdict(ok);
}

int report_cmd(const RunConfig& c, std::ostream& out, std::ostream&) {
  report::ReportOptions options;
  options.profile = c.profile.make();
  options.lambda_max = c.lambda_max;
  options.step = c.step;
  options.seed = c.seed;
  const auto rows = report::reconcile_constants(options);
  nlohmann::ordered_json doc;
  doc["command"] = "report";
  doc["config"] = to_json(c);
  doc["results"] = nlohmann::ordered_json::array();
  for (const auto& row : rows) {
    doc["results"].push_back({{"name", row.name},
                              {"paper_value_expr", row.paper_value_expr},
                              {"derived_value", row.derived_value},
                              {"residual", row.residual},
                              {"pass", row.pass},
                              {"derived_value_expr", row.derived_value_expr},
                              {"paper_value", row.paper_value},
                              {"paper_residual", row.paper_residual},
                              {"tolerance", row.tolerance},
                              {"verdict", std::string(report::to_string(row.verdict))}});
  }
  write_json(out, doc);
  return verdict(report::all_pass(rows));
}

struct Entry {
  std::string_view name;
  std::string_view help;
  Handler handler;
};

constexpr Entry kCommands[] = {
    {"density", "Plancherel density w(lambda) on a lambda grid (CSV)", density_cmd},
    {"transform", "Evaluate T f at one spectral parameter and chart point (CSV)", transform_cmd},
    {"invert", "Invert sampled spectral data on a radius grid (CSV)", invert_cmd},
    {"roundtrip", "Sup-error of sample + invert relative to the profile (CSV)", roundtrip_cmd},
    {"plancherel", "Both sides of the Plancherel identity (CSV)", plancherel_cmd},
    {"equivariance", "Equivariance residuals for random group elements (CSV)", equivariance_cmd},
    {"sphere-check", "Sphere mean of |x_1|^{-s}: closed form, quadrature, Monte Carlo (CSV)", sphere_check_cmd},
    {"factorize", "Reconstruction error of the chart factorization (CSV)", factorize_cmd},
    {"pushforward-check", "Quasi-invariance and equivariance of the orbit map (CSV)", pushforward_cmd},
    {"report", "Printed versus derived constants with numerical verdicts (JSON)", report_cmd},
};

}  // namespace

std::vector<std::pair<std::string, std::string>> command_list() {
  std::vector<std::pair<std::string, std::string>> out;
  for (const Entry& e : kCommands) out.emplace_back(e.name, e.help);
  return out;
}

int run_command(const std::string& name, const RunConfig& config, std::ostream& out, std::ostream& err) {
  for (const Entry& e : kCommands) {
    if (e.name == name) return e.handler(config, out, err);
  }
  throw UsageError("unknown command '" + name + "'");
}

}  // namespace conebranch::cli
