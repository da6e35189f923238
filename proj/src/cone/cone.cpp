#include "conebranch/cone/cone.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "conebranch/error.hpp"
#include "conebranch/numerics/hyperspherical.hpp"

namespace conebranch::cone {

ConeMatrix eta(const OrbitVector& v) {
  if (v.coords.size() == 0 || v.coords.norm() == 0.0) {
    throw ZeroVector("eta: zero vector");
  }
  if (v.field == Field::real) {
    const Eigen::VectorXd x = v.coords.real();
    return {(x * x.transpose()).cast<Complex>(), Field::real};
  }
  return {v.coords * v.coords.adjoint(), Field::complex};
}

int stratum_rank(const ConeMatrix& x, std::optional<double> tol) {
  const Eigen::MatrixXcd& m = x.entries;
  const double scale = m.norm();
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, scale)) {
    throw InvalidArgument("stratum_rank: matrix is not self-adjoint");
  }
  const double t = tol.value_or(1e-10 * scale);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
  int rank = 0;
  for (const double ev : solver.eigenvalues()) {
    if (ev < -t) {
      throw NotPSD("stratum_rank: eigenvalue " + std::to_string(ev) + " below -tol");
    }
    if (ev > t) {
      ++rank;
    }
  }
  return rank;
}

ConeMatrix act(const group::GroupElement& g, const ConeMatrix& x) {
  return {g.matrix() * x.entries * g.adjoint(), x.field};
}

namespace {

// Unit vector and surface element for a point of the sphere in R^n (real
// field, hyperspherical angles) or of S^3 in C^2 with the phase of z_1 fixed
// to 0 (Hopf angles chi, alpha): z = (cos chi, sin chi e^{i alpha}).
double sphere_direction(Field field, int n, std::span<const double> angles, Eigen::VectorXcd& v) {
  if (field == Field::complex) {
    const double chi = angles[0];
    const double alpha = angles[1];
    v(0) = std::cos(chi);
    v(1) = std::polar(std::sin(chi), alpha);
    return std::sin(chi) * std::cos(chi);
  }
  double coords[numerics::kMaxQuadDimension] = {1.0};
  double unit[numerics::kMaxQuadDimension];
  for (int k = 1; k < n; ++k) {
    coords[k] = angles[k - 1];
  }
  const double jac = numerics::hyperspherical_point(std::span<const double>(coords, n), std::span<double>(unit, n));
  for (int j = 0; j < n; ++j) {
    v(j) = unit[j];
  }
  return jac;
}

}  // namespace

Complex pullback_integral(const OrbitFunction& f, const group::GroupElement& g,
                          const numerics::QuadratureConfig& cfg) {
  const Field field = g.field();
  const int n = g.n();
  // Complex pullbacks are phase invariant, so the phase of z_1 is integrated
  // out exactly (factor 2 pi) and C^n needs 2n - 1 coordinates.
  const int coords = field == Field::real ? n : 2 * n - 1;
  if (coords > numerics::kMaxQuadDimension) {
    throw DimensionTooLarge("pullback_integral: " + std::to_string(coords) + " coordinates exceed " +
                            std::to_string(numerics::kMaxQuadDimension));
  }
  std::vector<numerics::Interval> box;
  double fibre = 1.0;
  if (field == Field::real) {
    box = numerics::hyperspherical_box(n, 0.0, 1.0);
  } else {
    box = {{0.0, 1.0}, {0.0, std::numbers::pi / 2.0}, {0.0, 2.0 * std::numbers::pi}};
    fibre = 2.0 * std::numbers::pi;
  }
  const int real_dimension = n * real_dim(field);
  const Eigen::MatrixXcd& m = g.matrix();

  // Along a direction w the pullback lives on r_min <= r |g w| <= r_max; the
  // radial coordinate is rescaled onto that window so the box is tight.
  auto integrand = [&](std::span<const double> x) -> Complex {
    Eigen::VectorXcd v(n);
    const double jac_sphere = sphere_direction(field, n, x.subspan(1), v);
    const Eigen::VectorXcd gv = m * v;
    const double stretch = gv.norm();
    const double lo = f.r_min / stretch;
    const double hi = f.r_max / stretch;
    const double r = lo + (hi - lo) * x[0];
    return jac_sphere * std::pow(r, real_dimension - 1) * (hi - lo) * f.value(eta({r * gv, field}));
  };
  return fibre * numerics::quad_nd(integrand, box, std::nullopt, cfg).value;
}

double quasi_invariance_residual(const OrbitFunction& f, const group::GroupElement& g,
                                 const numerics::QuadratureConfig& cfg) {
  const auto id = group::GroupElement::identity(g.n(), g.field());
  const Complex base = pullback_integral(f, id, cfg);
  if (base == 0.0) {
    throw InvalidArgument("quasi_invariance_residual: test function integrates to zero");
  }
  const Complex moved = pullback_integral(f, g, cfg);
  const double d = static_cast<double>(real_dim(g.field()));
  const double factor = std::pow(std::abs(g.det()), -d);
  return std::abs(moved - factor * base) / std::abs(base);
}

}  // namespace conebranch::cone
