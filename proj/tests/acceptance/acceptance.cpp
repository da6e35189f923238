// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "conebranch/cone/cone.hpp"
#include "conebranch/error.hpp"
#include "conebranch/group/group.hpp"
#include "conebranch/numerics/gamma.hpp"
#include "conebranch/numerics/sphere.hpp"
#include "conebranch/report/report.hpp"
#include "conebranch/spectral/plancherel.hpp"
#include "conebranch/spectral/transform.hpp"
#include "unit/test_support.hpp"

namespace {

using conebranch::Complex;
using conebranch::Field;
using conebranch::group::ChartPoint;
using conebranch::group::GroupElement;
using conebranch::spectral::RadialProfile;
using conebranch::spectral::TestFunction;
namespace cone = conebranch::cone;
namespace grp = conebranch::group;
namespace nm = conebranch::numerics;
namespace sp = conebranch::spectral;
using testing_support::random_compact;
using testing_support::random_element;
using testing_support::random_vector;

constexpr double kPi = 3.14159265358979323846;

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Worst value of a family of residuals against one tolerance.
class Worst {
 public:
  Worst(std::string label, double tol) : label_(std::move(label)), tol_(tol) {}
  void add(double residual) {
    if (!(residual <= tol_)) ok_ = false;  // NaN fails
    worst_ = std::isnan(residual) ? residual : std::max(worst_, residual);
    ++count_;
  }
  [[nodiscard]] bool ok() const { return ok_; }
  [[nodiscard]] std::string text() const {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s max %.3g (tol %.0e, %d cases)", label_.c_str(), worst_, tol_, count_);
    return buf;
  }

 private:
  std::string label_;
  double tol_;
  double worst_ = 0.0;
  int count_ = 0;
  bool ok_ = true;
};

Outcome combine(std::initializer_list<const Worst*> parts) {
  Outcome out;
  for (const Worst* w : parts) {
    out.pass = out.pass && w->ok();
    if (!out.detail.empty()) out.detail += "; ";
    out.detail += w->text();
  }
  return out;
}

double rel(Complex a, Complex b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// Chart point of the given norm in a fixed direction; complex entries get a phase.
ChartPoint chart_of_norm(int n, Field field, double norm) {
  ChartPoint eta = ChartPoint::Zero(n - 1);
  const Complex phase = field == Field::real ? Complex(1.0) : std::polar(1.0, 0.7);
  if (n == 2) {
    eta(0) = norm * phase;
  } else {
    eta(0) = 0.6 * norm * phase;
    eta(1) = -0.8 * norm;
  }
  return eta;
}

ChartPoint random_chart(std::mt19937_64& rng, int n, Field field) { return random_vector(rng, n - 1, field, 0.7); }

Complex reduction(const TestFunction& f, Complex z, const ChartPoint& eta) {
  const Complex s = grp::chart_exponent(z, f.n(), f.field());
  const Complex ft = f.field() == Field::real ? sp::ftilde(f, z) : sp::ftilde_c(f, z);
  return ft * std::exp(-0.5 * s * std::log1p(eta.squaredNorm()));
}

// Deviation in standard errors, floored at rounding (s = 0 gives a constant estimator).
double mc_sigmas(const nm::McResult& est, Complex exact) {
  return std::abs(est.value - exact) / std::max(est.std_err, 1e-14 * std::abs(exact));
}

Outcome sphere_slice() {
  nm::QuadratureConfig quad;
  quad.rel_tol = 1e-12;
  nm::QuadratureConfig mc;
  mc.mc_samples = 1'000'000;
  Worst quadrature("quadrature rel", 1e-8);
  Worst sigmas("MC sigmas", 3.0);
  std::uint64_t stream = 0;
  const std::vector<Complex> real_s = {0.0, 0.3, 0.5, Complex(0.5, 0.2), 0.9};
  for (int n : {2, 3, 4, 5}) {
    for (Complex s : real_s) {
      const Complex closed = nm::sphere_slice_real(n, s);
      quadrature.add(rel(closed, nm::sphere_slice_real_quadrature(n, s, quad)));
      sigmas.add(mc_sigmas(nm::sphere_slice_real_mc(n, s, mc, stream++), closed));
    }
  }
  const std::vector<Complex> complex_s = {0.0, 0.5, 1.0, 1.5, Complex(1.2, 0.5)};
  for (int n : {2, 3}) {
    for (Complex s : complex_s) {
      const Complex closed = nm::sphere_slice_complex(n, s);
      quadrature.add(rel(closed, nm::sphere_slice_complex_quadrature(n, s, quad)));
      sigmas.add(mc_sigmas(nm::sphere_slice_complex_mc(n, s, mc, stream++), closed));
    }
  }
  return combine({&quadrature, &sigmas});
}

Outcome reduction_identity() {
  Worst real("real rel", 1e-6);
  Worst complex("complex rel", 1e-5);
  const std::vector<RadialProfile> profiles = {RadialProfile::log_bump(0.4, 2.0, 1.0, 2.0),
                                               RadialProfile::bump(0.3, 1.5)};
  for (const RadialProfile& p : profiles) {
    for (int n : {2, 3}) {
      const TestFunction f(p, n, Field::real);
      const Complex z = sp::point_with_exponent(0.5, n, Field::real).z;
      for (double norm : {0.0, 0.5, 2.0}) {
        const ChartPoint eta = chart_of_norm(n, Field::real, norm);
        real.add(rel(sp::direct_T(f, z, eta), reduction(f, z, eta)));
      }
    }
    const TestFunction f(p, 2, Field::complex);
    const Complex z = sp::point_with_exponent(1.0, 2, Field::complex).z;
    for (double norm : {0.0, 0.5, 2.0}) {
      const ChartPoint eta = chart_of_norm(2, Field::complex, norm);
      complex.add(rel(sp::direct_T_c(f, z, eta), reduction(f, z, eta)));
    }
  }
  return combine({&real, &complex});
}

Outcome continuation() {
  Worst overlap("overlap rel", 1e-8);
  Worst order("k vs k+1 rel", 1e-8);
  Worst rotation("rotation rel", 1e-8);
  const RadialProfile p = RadialProfile::log_bump(0.3, 2.0, 1.0, 2.0);
  sp::TransformOptions reflected;
  reflected.rotation = sp::Rotation::reflection;
  for (int n : {2, 3}) {
    const TestFunction f(p, n, Field::real);
    for (Complex s : {Complex(0.6, -0.4), Complex(0.2, 1.0), Complex(-0.5, 0.0)}) {
      const Complex z = sp::point_with_exponent(s, n, Field::real).z;
      const ChartPoint eta = chart_of_norm(n, Field::real, 0.8);
      overlap.add(rel(sp::continued_T(f, z, eta, 1), sp::direct_T(f, z, eta)));
    }
    for (double lambda : {0.5, 1.0, 3.0}) {
      const int k = sp::default_continuation_order(grp::chart_exponent(lambda, n, Field::real));
      for (double norm : {0.0, 1.3}) {
        const ChartPoint eta = chart_of_norm(n, Field::real, norm);
        const Complex base = sp::continued_T(f, lambda, eta, k);
        order.add(rel(sp::continued_T(f, lambda, eta, k + 1), base));
        rotation.add(rel(sp::continued_T(f, lambda, eta, k, reflected), base));
      }
    }
  }
  return combine({&overlap, &order, &rotation});
}

std::vector<RadialProfile> roundtrip_profiles() {
  return {RadialProfile::log_bump(0.05, 20.0, 1.0, 2.0), RadialProfile::log_bump(0.04, 10.0, 2.5, 2.0),
          RadialProfile::log_bump(0.1, 50.0, 0.7, 2.0), RadialProfile::log_bump(0.02, 8.0, 1.0, 2.0),
          RadialProfile::log_bump(0.03, 30.0, 1.3, 2.0)};
}

const std::vector<std::pair<int, Field>> kSuite = {
    {2, Field::real}, {3, Field::real}, {4, Field::real}, {2, Field::complex}, {3, Field::complex}};

Outcome round_trip() {
  Worst error("sup error / sup norm", 1e-6);
  for (const auto& [n, field] : kSuite) {
    for (const RadialProfile& p : roundtrip_profiles()) {
      const sp::RoundTrip rt = sp::roundtrip(TestFunction(p, n, field), sp::GridSpec{200.0, 0.05});
      error.add(rt.relative);
    }
  }
  return combine({&error});
}

Outcome plancherel() {
  Worst identity("Plancherel residual", 1e-6);
  for (const auto& [n, field] : kSuite) {
    for (const RadialProfile& p : roundtrip_profiles()) {
      identity.add(sp::plancherel(TestFunction(p, n, field), 200.0).residual);
    }
  }
  // |C_c|^{-2} |(t)_{n-1}|^{-2} is constant in lambda, t = -(i lambda + n - 2)/2.
  Worst shape("Pochhammer shape rel", 1e-10);
  for (int n : {2, 3}) {
    const auto ratio = [n](double lambda) {
      const Complex t = -0.5 * (Complex(0.0, lambda) + double(n - 2));
      return 1.0 / (std::norm(sp::coeff_C_c(n, lambda)) * std::norm(nm::pochhammer(t, n - 1)));
    };
    const double reference = ratio(0.7);
    for (double lambda = -40.0; lambda <= 40.0; lambda += 0.9) {
      shape.add(std::abs(ratio(lambda) / reference - 1.0));
    }
    // The constant itself: 1 / (4 pi^{2n}).
    shape.add(std::abs(4.0 * std::pow(kPi, 2 * n) * reference - 1.0));
  }
  return combine({&identity, &shape});
}

Outcome equivariance() {
  Worst real("real rel", 1e-6);
  Worst complex("complex rel", 1e-5);
  sp::TransformOptions opt;
  opt.cfg.rel_tol = 1e-8;
  const RadialProfile p = RadialProfile::log_bump(0.4, 2.0, 1.0, 2.0);
  std::mt19937_64 rng(61);
  int negative = 0;
  for (int n : {2, 3}) {
    const TestFunction f(p, n, Field::real);
    const Complex z = sp::point_with_exponent(0.5, n, Field::real).z;
    for (int i = 0; i < 20; ++i) {
      const GroupElement g = random_element(rng, n, Field::real);
      if (g.det().real() < 0.0) ++negative;
      real.add(sp::equivariance_residual(f, g, z, random_chart(rng, n, Field::real), opt));
    }
  }
  const TestFunction f(p, 2, Field::complex);
  const Complex z = sp::point_with_exponent(1.0, 2, Field::complex).z;
  for (int i = 0; i < 10; ++i) {
    const GroupElement g = random_element(rng, 2, Field::complex);
    complex.add(sp::equivariance_residual_c(f, g, z, random_chart(rng, 2, Field::complex), opt));
  }
  Outcome out = combine({&real, &complex});
  out.detail += "; det < 0 in " + std::to_string(negative) + " real cases";
  return out;
}

Outcome group_structure() {
  Worst factor("factorize rel", 1e-12);
  Worst multiplicative("pi multiplicativity rel", 1e-10);
  Worst spherical("spherical vector rel", 1e-10);
  std::mt19937_64 rng(71);
  for (int i = 0; i < 100; ++i) {
    const int n = 2 + i % 3;
    const Field field = i % 2 == 0 ? Field::real : Field::complex;
    const GroupElement g = random_element(rng, n, field, 10.0);
    const GroupElement h(g.unimodular(), field);
    const ChartPoint x = random_chart(rng, n, field);
    const grp::QmanFactors q = grp::factorize_qman(h, x);
    const Eigen::MatrixXcd target = h.matrix() * grp::nbar(x);
    factor.add((q.nbar * q.m * q.a * q.n - target).norm() / target.norm());
  }
  const grp::ChartFunction smooth = [](const ChartPoint& e) {
    return Complex(std::exp(-e.squaredNorm()), 0.3 * e(0).real());
  };
  std::uniform_real_distribution<double> lam(-4.0, 4.0);
  for (int i = 0; i < 20; ++i) {
    const int n = 2 + i % 2;
    const Field field = i < 10 ? Field::real : Field::complex;
    const GroupElement g1 = random_element(rng, n, field);
    const GroupElement g2 = random_element(rng, n, field);
    const ChartPoint x = random_chart(rng, n, field);
    const double l = lam(rng);
    const Complex composed = grp::pi_act(l, g1, [&](const ChartPoint& e) { return grp::pi_act(l, g2, smooth, e); }, x);
    multiplicative.add(rel(composed, grp::pi_act(l, g1 * g2, smooth, x)));
  }
  for (int i = 0; i < 20; ++i) {
    const int n = 2 + i % 2;
    const Field field = i < 10 ? Field::real : Field::complex;
    const GroupElement k = random_compact(rng, n, field);
    const double l = lam(rng);
    const grp::ChartFunction e = [&](const ChartPoint& y) { return grp::spherical_vector(l, y, n, field); };
    const ChartPoint x = random_chart(rng, n, field);
    spherical.add(rel(grp::pi_act(l, k, e, x), e(x)));
  }
  return combine({&factor, &multiplicative, &spherical});
}

Outcome measure_geometry() {
  Worst quasi("quasi-invariance rel", 1e-6);
  Worst eta("eta equivariance rel", 1e-12);
  nm::QuadratureConfig cfg;
  cfg.rel_tol = 1e-7;
  cfg.max_subdivisions = 4000;
  // Non-radial function of X = x x^t supported in 0.5 <= |x| <= 2.
  const cone::OrbitFunction f{[](const cone::ConeMatrix& x) -> Complex {
                                const double t = x.entries.trace().real();
                                const double v = std::log(t) / std::log(4.0);
                                if (std::abs(v) >= 1.0) return 0.0;
                                return std::exp(-1.0 / (1.0 - v * v)) *
                                       (1.0 + 0.6 * x.entries(0, 1).real() / t + 0.3 * x.entries(0, 0).real() / t);
                              },
                              0.5, 2.0};
  std::mt19937_64 rng(81);
  for (const auto& [n, field] : {std::pair{2, Field::real}, std::pair{3, Field::real}, std::pair{2, Field::complex}}) {
    for (int i = 0; i < 20; ++i) {
      const GroupElement g = random_element(rng, n, field);
      quasi.add(cone::quasi_invariance_residual(f, g, cfg));
      const Eigen::VectorXcd v = random_vector(rng, n, field);
      const cone::ConeMatrix moved = cone::eta({g.matrix() * v, field});
      const cone::ConeMatrix acted = cone::act(g, cone::eta({v, field}));
      eta.add((moved.entries - acted.entries).norm() / acted.entries.norm());
    }
  }
  return combine({&quasi, &eta});
}

Outcome report() {
  const auto rows = conebranch::report::reconcile_constants();
  Outcome out;
  int derived = 0;
  for (const auto& row : rows) {
    if (row.verdict == conebranch::report::Verdict::derived) ++derived;
    if (!row.pass) {
      out.pass = false;
      out.detail += "derived value fails: " + row.name + "; ";
    }
  }
  out.detail += std::to_string(rows.size()) + " constants, derived value holds in " +
                std::to_string(std::count_if(rows.begin(), rows.end(), [](const auto& r) { return r.pass; })) +
                ", printed value loses in " + std::to_string(derived);
  return out;
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "sphere-slice identity", 60.0, sphere_slice},
      {2, "reduction identity", 300.0, reduction_identity},
      {3, "continuation", 300.0, continuation},
      {4, "round trip", 120.0, round_trip},
      {5, "Plancherel", 120.0, plancherel},
      {6, "equivariance", 600.0, equivariance},
      {7, "group structure", 30.0, group_structure},
      {8, "measure geometry", 60.0, measure_geometry},
      {9, "constant report", 600.0, report},
  };
  bool all = true;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = seconds <= c.limit_seconds;
    const bool pass = out.pass && in_time;
    all = all && pass;
    std::printf("criterion %d %-22s %s  %.1f s (limit %.0f s)  %s\n", c.id, c.name, pass ? "PASS" : "FAIL", seconds,
                c.limit_seconds, out.detail.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
