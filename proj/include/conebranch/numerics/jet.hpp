#pragma once

#include <array>
#include <cmath>

#include "conebranch/error.hpp"

namespace conebranch::numerics {

/// Truncated Taylor series c_0 + c_1 t + ... + c_K t^K with K <= kCapacity - 1.
/// Arithmetic propagates the coefficients exactly (up to rounding), which
/// gives high-order directional derivatives of composed functions.
class Jet {
 public:
  static constexpr int kCapacity = 9;

  Jet() = default;
  explicit Jet(int order, double constant = 0.0) : order_(order) {
    if (order < 0 || order >= kCapacity) {
      throw InvalidArgument("Jet: order out of range");
    }
    c_[0] = constant;
  }

  /// t -> x + dx t.
  static Jet variable(int order, double x, double dx) {
    Jet j(order, x);
    if (order >= 1) j.c_[1] = dx;
    return j;
  }

  [[nodiscard]] int order() const { return order_; }
  double& operator[](int k) { return c_[k]; }
  double operator[](int k) const { return c_[k]; }

  /// k-th derivative at t = 0.
  [[nodiscard]] double derivative(int k) const {
    double f = 1.0;
    for (int j = 2; j <= k; ++j) f *= j;
    return c_[k] * f;
  }

  Jet& operator+=(const Jet& o) {
    for (int k = 0; k <= order_; ++k) c_[k] += o.c_[k];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    for (int k = 0; k <= order_; ++k) c_[k] -= o.c_[k];
    return *this;
  }
  Jet& operator*=(double s) {
    for (int k = 0; k <= order_; ++k) c_[k] *= s;
    return *this;
  }
  Jet& operator+=(double s) {
    c_[0] += s;
    return *this;
  }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(Jet a, double s) { return a *= s; }
  friend Jet operator*(double s, Jet a) { return a *= s; }
  friend Jet operator+(Jet a, double s) { return a += s; }
  friend Jet operator-(double s, const Jet& a) {
    Jet r = a * -1.0;
    r.c_[0] += s;
    return r;
  }

  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet r(a.order_);
    for (int k = 0; k <= a.order_; ++k) {
      double acc = 0.0;
      for (int j = 0; j <= k; ++j) acc += a.c_[j] * b.c_[k - j];
      r.c_[k] = acc;
    }
    return r;
  }

  friend Jet exp(const Jet& a) {
    Jet r(a.order_, std::exp(a.c_[0]));
    for (int k = 1; k <= a.order_; ++k) {
      double acc = 0.0;
      for (int j = 1; j <= k; ++j) acc += j * a.c_[j] * r.c_[k - j];
      r.c_[k] = acc / k;
    }
    return r;
  }

  friend Jet log(const Jet& a) {
    Jet r(a.order_, std::log(a.c_[0]));
    for (int k = 1; k <= a.order_; ++k) {
      double acc = 0.0;
      for (int j = 1; j < k; ++j) acc += j * r.c_[j] * a.c_[k - j];
      r.c_[k] = (a.c_[k] - acc / k) / a.c_[0];
    }
    return r;
  }

  friend Jet reciprocal(const Jet& a) {
    Jet r(a.order_, 1.0 / a.c_[0]);
    for (int k = 1; k <= a.order_; ++k) {
      double acc = 0.0;
      for (int j = 1; j <= k; ++j) acc += a.c_[j] * r.c_[k - j];
      r.c_[k] = -acc / a.c_[0];
    }
    return r;
  }

  friend Jet sqrt(const Jet& a) {
    Jet r(a.order_, std::sqrt(a.c_[0]));
    for (int k = 1; k <= a.order_; ++k) {
      double acc = 0.0;
      for (int j = 1; j < k; ++j) acc += r.c_[j] * r.c_[k - j];
      r.c_[k] = (a.c_[k] - acc) / (2.0 * r.c_[0]);
    }
    return r;
  }

 private:
  int order_ = 0;
  std::array<double, kCapacity> c_{};
};

}  // namespace conebranch::numerics
