#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>

#include "conebranch/field.hpp"
#include "conebranch/group/group.hpp"
#include "conebranch/numerics/quadrature.hpp"

namespace conebranch::cone {

/// Real symmetric or complex Hermitian matrix (stored complex).
struct ConeMatrix {
  Eigen::MatrixXcd entries;
  Field field = Field::real;
};

/// Non-zero vector in R^n or C^n (stored complex).
struct OrbitVector {
  Eigen::VectorXcd coords;
  Field field = Field::real;
};

/// x x^t (real) or z z^* (complex). Throws ZeroVector.
ConeMatrix eta(const OrbitVector& v);

/// Number of eigenvalues above tol; tol defaults to 1e-10 ||X||_F.
/// Throws NotPSD if an eigenvalue is below -tol and InvalidArgument if X is
/// not symmetric / Hermitian to 1e-12.
int stratum_rank(const ConeMatrix& x, std::optional<double> tol = std::nullopt);

/// g X g^t (real) or g X g^* (complex).
ConeMatrix act(const group::GroupElement& g, const ConeMatrix& x);

/// A function on the rank-one orbit, evaluated through its pullback
/// F(eta(x)). The pullback must vanish unless r_min <= |x| <= r_max.
struct OrbitFunction {
  std::function<Complex(const ConeMatrix&)> value;
  double r_min = 0.0;
  double r_max = 1.0;
};

/// |I(g) - |det g|^{-d} I(1)| / |I(1)| with I(g) = integral of F(eta(g x)) dx
/// over R^n (d = 1) or C^n (d = 2). Real dimension n resp. 2n must be <= 4.
double quasi_invariance_residual(const OrbitFunction& f, const group::GroupElement& g,
                                 const numerics::QuadratureConfig& cfg);

/// Integral of F(eta(g x)) dx in hyperspherical coordinates.
Complex pullback_integral(const OrbitFunction& f, const group::GroupElement& g,
                          const numerics::QuadratureConfig& cfg);

}  // namespace conebranch::cone
