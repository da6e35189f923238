#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>

#include "conebranch/field.hpp"

namespace conebranch {

using Complex = std::complex<double>;

namespace group {

/// Invertible n x n matrix over the base field with its scalar part
/// zeta = |det g|^{1/n} and unimodular part h = g / zeta cached.
/// Real elements are stored as complex matrices with zero imaginary part.
class GroupElement {
 public:
  /// Throws SingularMatrix if |det| is zero (relative to the matrix scale)
  /// and InvalidArgument if a real element has non-zero imaginary entries.
  GroupElement(Eigen::MatrixXcd matrix, Field field);

  static GroupElement real(const Eigen::MatrixXd& matrix);
  static GroupElement complex(const Eigen::MatrixXcd& matrix);
  static GroupElement identity(int n, Field field);

  [[nodiscard]] const Eigen::MatrixXcd& matrix() const { return matrix_; }
  [[nodiscard]] Field field() const { return field_; }
  [[nodiscard]] int n() const { return static_cast<int>(matrix_.rows()); }
  [[nodiscard]] Complex det() const { return det_; }
  [[nodiscard]] double zeta() const { return zeta_; }
  [[nodiscard]] const Eigen::MatrixXcd& unimodular() const { return unimodular_; }

  /// g^t in the real case, g^* in the complex case.
  [[nodiscard]] Eigen::MatrixXcd adjoint() const;

  [[nodiscard]] GroupElement inverse() const;
  GroupElement operator*(const GroupElement& other) const;

 private:
  Eigen::MatrixXcd matrix_;
  Field field_;
  Complex det_;
  double zeta_;
  Eigen::MatrixXcd unimodular_;
};

/// The real 2n x 2n matrix of a complex n x n matrix acting on
/// (Re z_1, Im z_1, ..., Re z_n, Im z_n).
Eigen::MatrixXd realify(const Eigen::MatrixXcd& m);

/// Complex vector with real coordinates interleaved as (Re z_1, Im z_1, ...).
Eigen::VectorXd realify(const Eigen::VectorXcd& v);
Eigen::VectorXcd complexify(const Eigen::VectorXd& x);

/// Blocks ((a, b), (c, d)) of an n x n matrix, a scalar and d (n-1) x (n-1).
struct BlockForm {
  Complex a;
  Eigen::RowVectorXcd b;
  Eigen::VectorXcd c;
  Eigen::MatrixXcd d;

  static BlockForm of(const Eigen::MatrixXcd& m);
  [[nodiscard]] Eigen::MatrixXcd assemble() const;
};

/// Coordinate eta in R^{n-1} or C^{n-1} of the opposite unipotent chart.
using ChartPoint = Eigen::VectorXcd;

/// Function on the chart.
using ChartFunction = std::function<Complex(const ChartPoint&)>;

struct Decomposition {
  double zeta = 1.0;
  BlockForm blocks;  // of h^{-1}, h = g / zeta
};

/// zeta = |det g|^{1/n} and the blocks of (g / zeta)^{-1}.
Decomposition block_decompose(const GroupElement& g);

/// a + b eta; ChartSingularity when its modulus is below 1e-14.
Complex cocycle(const BlockForm& blocks, const ChartPoint& eta);

/// (c + d eta)(a + b eta)^{-1}.
ChartPoint mobius(const BlockForm& blocks, const ChartPoint& eta);

/// Unit lower block-triangular matrix ((1, 0), (x, I)).
Eigen::MatrixXcd nbar(const ChartPoint& x);

struct QmanFactors {
  Eigen::MatrixXcd nbar;
  Eigen::MatrixXcd m;
  Eigen::MatrixXcd a;
  Eigen::MatrixXcd n;
};

/// h nbar(x) = nbar(y) m a n with y = mobius(blocks of h, x),
/// m = diag(w/|w|, |w|^{1/(n-1)} (d - y b)), a = diag(|w|, |w|^{-1/(n-1)} I)
/// and n = ((1, b/w), (0, I)), where w = a + b x uses the blocks of h itself.
/// Throws InvalidArgument unless |det h| = 1, ChartSingularity if w = 0.
QmanFactors factorize_qman(const GroupElement& h, const ChartPoint& x);

/// Exponent s = i lambda + n/2 (real) or i lambda + n (complex).
Complex chart_exponent(Complex lambda, int n, Field field);

/// |a + b eta|^{-s} F(mobius(eta)) with the blocks of h^{-1}.
Complex tau_act(Complex lambda, const BlockForm& blocks, int n, const ChartFunction& f, const ChartPoint& eta,
                Field field);

/// zeta^{s} tau_act(lambda, blocks of h^{-1}, F, eta).
Complex pi_act(Complex lambda, const GroupElement& g, const ChartFunction& f, const ChartPoint& eta);

/// Eta-independent part of the spherical vector: (1 + |eta|^2)^{-s/2}.
Complex spherical_vector(Complex lambda, const ChartPoint& eta, int n, Field field);

using VectorFunction = std::function<Complex(const Eigen::VectorXcd&)>;

enum class UnitarityExponent { one, half };

/// The action on functions of the vector space:
/// exponent one:  det g f(g^t x) (real), |det g|^2 f(g^* z) (complex);
/// exponent half: |det g|^{1/2} f(g^t x), |det g| f(g^* z).
Complex sigma_act(const GroupElement& g, const VectorFunction& f, const Eigen::VectorXcd& x,
                  UnitarityExponent exponent = UnitarityExponent::one);

/// Scalar multiplying f(g^t x) in sigma_act.
Complex sigma_scale(const GroupElement& g, UnitarityExponent exponent);

struct PsiParts {
  Complex det;
  Eigen::MatrixXcd unimodular;  // det^{-1/n} g, principal root
};

PsiParts psi_decompose(const GroupElement& g);

/// xi with Psi-unimodular(g1 g2) = xi Psi-unimodular(g1) Psi-unimodular(g2);
/// an n-th root of unity.
Complex psi_defect(const GroupElement& g1, const GroupElement& g2);

}  // namespace group
}  // namespace conebranch
