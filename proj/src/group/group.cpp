#include "conebranch/group/group.hpp"

#include <cmath>
#include <string>

#include "conebranch/error.hpp"

namespace conebranch::group {

GroupElement::GroupElement(Eigen::MatrixXcd matrix, Field field) : matrix_(std::move(matrix)), field_(field) {
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() < 1) {
    throw InvalidArgument("GroupElement: matrix must be square and non-empty");
  }
  if (!matrix_.allFinite()) {
    throw InvalidArgument("GroupElement: non-finite entries");
  }
  if (field_ == Field::real && matrix_.imag().cwiseAbs().maxCoeff() != 0.0) {
    throw InvalidArgument("GroupElement: real element with non-zero imaginary part");
  }
  const int n = static_cast<int>(matrix_.rows());
  det_ = matrix_.determinant();
  const double scale = std::pow(matrix_.norm(), n);
  if (!(std::abs(det_) > 1e-14 * scale)) {
    throw SingularMatrix("GroupElement: matrix is singular (|det| = " + std::to_string(std::abs(det_)) + ")");
  }
  zeta_ = std::pow(std::abs(det_), 1.0 / n);
  unimodular_ = matrix_ / zeta_;
}

GroupElement GroupElement::real(const Eigen::MatrixXd& matrix) {
  return {matrix.cast<Complex>(), Field::real};
}

GroupElement GroupElement::complex(const Eigen::MatrixXcd& matrix) { return {matrix, Field::complex}; }

GroupElement GroupElement::identity(int n, Field field) {
  return {Eigen::MatrixXcd::Identity(n, n), field};
}

Eigen::MatrixXcd GroupElement::adjoint() const {
  return field_ == Field::real ? Eigen::MatrixXcd(matrix_.transpose()) : Eigen::MatrixXcd(matrix_.adjoint());
}

GroupElement GroupElement::inverse() const { return {matrix_.inverse(), field_}; }

GroupElement GroupElement::operator*(const GroupElement& other) const {
  if (other.field_ != field_ || other.n() != n()) {
    throw InvalidArgument("GroupElement: product of incompatible elements");
  }
  return {matrix_ * other.matrix_, field_};
}

Eigen::MatrixXd realify(const Eigen::MatrixXcd& m) {
  Eigen::MatrixXd out(2 * m.rows(), 2 * m.cols());
  for (Eigen::Index j = 0; j < m.rows(); ++j) {
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      const Complex v = m(j, k);
      out(2 * j, 2 * k) = v.real();
      out(2 * j, 2 * k + 1) = -v.imag();
      out(2 * j + 1, 2 * k) = v.imag();
      out(2 * j + 1, 2 * k + 1) = v.real();
    }
  }
  return out;
}

Eigen::VectorXd realify(const Eigen::VectorXcd& v) {
  Eigen::VectorXd out(2 * v.size());
  for (Eigen::Index j = 0; j < v.size(); ++j) {
    out(2 * j) = v(j).real();
    out(2 * j + 1) = v(j).imag();
  }
  return out;
}

Eigen::VectorXcd complexify(const Eigen::VectorXd& x) {
  if (x.size() % 2 != 0) {
    throw InvalidArgument("complexify: odd length");
  }
  Eigen::VectorXcd out(x.size() / 2);
  for (Eigen::Index j = 0; j < out.size(); ++j) {
    out(j) = Complex(x(2 * j), x(2 * j + 1));
  }
  return out;
}

BlockForm BlockForm::of(const Eigen::MatrixXcd& m) {
  const Eigen::Index k = m.rows() - 1;
  return {m(0, 0), m.block(0, 1, 1, k), m.block(1, 0, k, 1), m.block(1, 1, k, k)};
}

Eigen::MatrixXcd BlockForm::assemble() const {
  const Eigen::Index k = d.rows();
  Eigen::MatrixXcd m(k + 1, k + 1);
  m(0, 0) = a;
  m.block(0, 1, 1, k) = b;
  m.block(1, 0, k, 1) = c;
  m.block(1, 1, k, k) = d;
  return m;
}

Decomposition block_decompose(const GroupElement& g) {
  return {g.zeta(), BlockForm::of(g.unimodular().inverse())};
}

Complex cocycle(const BlockForm& blocks, const ChartPoint& eta) {
  if (eta.size() != blocks.b.size()) {
    throw InvalidArgument("chart point has dimension " + std::to_string(eta.size()) + ", expected " +
                          std::to_string(blocks.b.size()));
  }
  const Complex w = blocks.a + (blocks.b * eta)(0);
  if (std::abs(w) < 1e-14) {
    throw ChartSingularity("a + b eta vanishes at this chart point");
  }
  return w;
}

ChartPoint mobius(const BlockForm& blocks, const ChartPoint& eta) {
  const Complex w = cocycle(blocks, eta);
  return (blocks.c + blocks.d * eta) / w;
}

Eigen::MatrixXcd nbar(const ChartPoint& x) {
  const Eigen::Index k = x.size();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(k + 1, k + 1);
  m.block(1, 0, k, 1) = x;
  return m;
}

QmanFactors factorize_qman(const GroupElement& h, const ChartPoint& x) {
  const int n = h.n();
  if (n < 2) {
    throw InvalidArgument("factorize_qman: n must be >= 2");
  }
  if (std::abs(std::abs(h.det()) - 1.0) > 1e-12) {
    throw InvalidArgument("factorize_qman: |det h| must be 1");
  }
  const BlockForm blocks = BlockForm::of(h.matrix());
  const Complex w = cocycle(blocks, x);
  const double mod = std::abs(w);
  const ChartPoint y = (blocks.c + blocks.d * x) / w;
  const Eigen::Index k = n - 1;
  const double root = std::pow(mod, 1.0 / static_cast<double>(k));

  QmanFactors f;
  f.nbar = nbar(y);
  f.m = Eigen::MatrixXcd::Zero(n, n);
  f.m(0, 0) = w / mod;
  f.m.block(1, 1, k, k) = root * (blocks.d - y * blocks.b);
  f.a = Eigen::MatrixXcd::Identity(n, n) / root;
  f.a(0, 0) = mod;
  f.n = Eigen::MatrixXcd::Identity(n, n);
  f.n.block(0, 1, 1, k) = blocks.b / w;
  return f;
}

Complex chart_exponent(Complex lambda, int n, Field field) {
  const Complex i(0.0, 1.0);
  return i * lambda + (field == Field::real ? 0.5 * n : static_cast<double>(n));
}

Complex tau_act(Complex lambda, const BlockForm& blocks, int n, const ChartFunction& f, const ChartPoint& eta,
                Field field) {
  const Complex w = cocycle(blocks, eta);
  const Complex s = chart_exponent(lambda, n, field);
  return std::pow(Complex(std::abs(w)), -s) * f((blocks.c + blocks.d * eta) / w);
}

Complex pi_act(Complex lambda, const GroupElement& g, const ChartFunction& f, const ChartPoint& eta) {
  const Decomposition dec = block_decompose(g);
  const Complex s = chart_exponent(lambda, g.n(), g.field());
  return std::pow(Complex(dec.zeta), s) * tau_act(lambda, dec.blocks, g.n(), f, eta, g.field());
}

Complex spherical_vector(Complex lambda, const ChartPoint& eta, int n, Field field) {
  const Complex s = chart_exponent(lambda, n, field);
  return std::pow(Complex(1.0 + eta.squaredNorm()), -s / 2.0);
}

Complex sigma_scale(const GroupElement& g, UnitarityExponent exponent) {
  const double mod = std::abs(g.det());
  if (g.field() == Field::real) {
    return exponent == UnitarityExponent::one ? Complex(g.det().real()) : Complex(std::sqrt(mod));
  }
  return exponent == UnitarityExponent::one ? Complex(mod * mod) : Complex(mod);
}

Complex sigma_act(const GroupElement& g, const VectorFunction& f, const Eigen::VectorXcd& x,
                  UnitarityExponent exponent) {
  return sigma_scale(g, exponent) * f(g.adjoint() * x);
}

PsiParts psi_decompose(const GroupElement& g) {
  const Complex root = std::pow(g.det(), -1.0 / g.n());
  return {g.det(), root * g.matrix()};
}

Complex psi_defect(const GroupElement& g1, const GroupElement& g2) {
  const int n = g1.n();
  const Complex r12 = std::pow(g1.det() * g2.det(), -1.0 / n);
  const Complex r1 = std::pow(g1.det(), -1.0 / n);
  const Complex r2 = std::pow(g2.det(), -1.0 / n);
  return r12 / (r1 * r2);
}

}  // namespace conebranch::group
